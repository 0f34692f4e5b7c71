//! The EDPSIGNS v1 sign-sequence file format.
//!
//! ```text
//! EDPSIGNS v1 start=<s> len=<n>
//! +--+-+--+++--+++...            (80 signs per line, newline-terminated)
//! ```
//!
//! Readers are strict: any byte outside the header grammar and the sign
//! body ('+', '-', newline in the right places) is rejected.

use std::io::{self, BufRead, Write};

use edp_core::signs::{Sign, SignSequence};

pub const LINE_WIDTH: usize = 80;

#[derive(Debug)]
pub enum SignsFileError {
    Io(io::Error),
    BadHeader(String),
    BadByte { line: u64, byte: u8 },
    BadLineLength { line: u64, got: usize, expected: usize },
    LengthMismatch { declared: u64, got: u64 },
    TrailingData,
}

impl std::fmt::Display for SignsFileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SignsFileError::Io(e) => write!(f, "io error: {e}"),
            SignsFileError::BadHeader(h) => write!(f, "bad EDPSIGNS header: {h:?}"),
            SignsFileError::BadByte { line, byte } => {
                write!(f, "unexpected byte 0x{byte:02x} on line {line}")
            }
            SignsFileError::BadLineLength { line, got, expected } => {
                write!(f, "line {line} has {got} signs, expected {expected}")
            }
            SignsFileError::LengthMismatch { declared, got } => {
                write!(f, "header declares {declared} signs, file carries {got}")
            }
            SignsFileError::TrailingData => write!(f, "data after the final sign line"),
        }
    }
}

impl std::error::Error for SignsFileError {}

impl From<io::Error> for SignsFileError {
    fn from(e: io::Error) -> Self {
        SignsFileError::Io(e)
    }
}

pub fn write_signs<W: Write>(mut w: W, signs: &SignSequence) -> io::Result<()> {
    writeln!(w, "EDPSIGNS v1 start={} len={}", signs.start(), signs.len())?;
    let mut line = Vec::with_capacity(LINE_WIDTH + 1);
    for chunk in signs.signs().chunks(LINE_WIDTH) {
        line.clear();
        for s in chunk {
            line.push(match s {
                Sign::Plus => b'+',
                Sign::Minus => b'-',
            });
        }
        line.push(b'\n');
        w.write_all(&line)?;
    }
    w.flush()
}

pub fn read_signs<R: BufRead>(mut r: R) -> Result<SignSequence, SignsFileError> {
    let mut header = String::new();
    r.read_line(&mut header)?;
    let rest = header
        .strip_prefix("EDPSIGNS v1 start=")
        .and_then(|s| s.strip_suffix('\n'))
        .ok_or_else(|| SignsFileError::BadHeader(header.clone()))?;
    let (start_str, len_str) = rest
        .split_once(" len=")
        .ok_or_else(|| SignsFileError::BadHeader(header.clone()))?;
    let start: u64 =
        start_str.parse().map_err(|_| SignsFileError::BadHeader(header.clone()))?;
    let len: u64 = len_str.parse().map_err(|_| SignsFileError::BadHeader(header.clone()))?;
    if start == 0 {
        return Err(SignsFileError::BadHeader(header));
    }

    let mut signs: Vec<Sign> = Vec::with_capacity(len as usize);
    let mut buf = Vec::new();
    let mut line_no = 1u64;
    loop {
        buf.clear();
        let n = r.read_until(b'\n', &mut buf)?;
        if n == 0 {
            break;
        }
        line_no += 1;
        if signs.len() as u64 == len {
            return Err(SignsFileError::TrailingData);
        }
        let Some(body) = buf.strip_suffix(b"\n") else {
            return Err(SignsFileError::BadByte {
                line: line_no,
                byte: *buf.last().unwrap_or(&0),
            });
        };
        let remaining = (len - signs.len() as u64) as usize;
        let expected = remaining.min(LINE_WIDTH);
        if body.len() != expected {
            return Err(SignsFileError::BadLineLength {
                line: line_no,
                got: body.len(),
                expected,
            });
        }
        for &b in body {
            signs.push(match b {
                b'+' => Sign::Plus,
                b'-' => Sign::Minus,
                _ => return Err(SignsFileError::BadByte { line: line_no, byte: b }),
            });
        }
    }
    if signs.len() as u64 != len {
        return Err(SignsFileError::LengthMismatch { declared: len, got: signs.len() as u64 });
    }
    Ok(SignSequence::new(start, signs))
}

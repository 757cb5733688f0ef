//! The `.tt` truth-table text format.
//!
//! ```text
//! file   = header EOL table [EOL]
//! header = "n=" decimal            ; 1 <= n <= cap, no sign, no spaces
//! table  = hexdigit{D}             ; D = 2^n / 4, or 1 when n = 1
//! EOL    = "\n" | "\r\n"
//! ```
//!
//! The table is the truth table read as one big-endian hexadecimal number:
//! the first digit is the most significant nibble and covers the highest
//! indices, the last digit covers indices 3..0. Within a nibble, bit `b`
//! (value `2^b`) is the entry at index `4*k + b`. For `n = 1` the single digit
//! must be below 4. Digits are written in lowercase and accepted in either
//! case. Nothing may follow the optional final line break.
//!
//! The worked 3-variable example `f = [1,1,0,1,1,0,0,0]` is `n=3\n1b\n`.

use super::{check_variables, word_count, BooleanFunction, DEFAULT_N_MAX};
use crate::error::{Error, Result};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn digit_count(n: usize) -> usize {
    if n >= 2 {
        1 << (n - 2)
    } else {
        1
    }
}

/// Table as hexadecimal digits, most-significant nibble first.
pub fn table_to_hex(f: &BooleanFunction) -> String {
    let digits = digit_count(f.n());
    let words = f.words();
    let mut out = String::with_capacity(digits);
    for d in (0..digits).rev() {
        let bit = d * 4;
        let nibble = (words[bit >> 6] >> (bit & 63)) & 0xF;
        out.push(char::from_digit(nibble as u32, 16).expect("nibble < 16"));
    }
    out
}

/// Renders the full file, including the trailing newline.
pub fn render(f: &BooleanFunction) -> String {
    format!("n={}\n{}\n", f.n(), table_to_hex(f))
}

pub fn parse(text: &str) -> Result<BooleanFunction> {
    parse_with_cap(text, DEFAULT_N_MAX)
}

pub fn parse_with_cap(text: &str, cap: usize) -> Result<BooleanFunction> {
    let mut lines = split_lines(text);
    let header = lines.next().ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let n = parse_header(header)?;
    check_variables(n, cap)?;

    let body = lines
        .next()
        .ok_or_else(|| parse_err(2, 1, "missing truth-table line"))?;
    if lines.next().is_some() {
        return Err(parse_err(3, 1, "unexpected content after truth-table line"));
    }

    let expected = digit_count(n);
    let chars: Vec<char> = body.chars().collect();
    let mut words = vec![0u64; word_count(n)];
    for (col, &c) in chars.iter().enumerate() {
        if col >= expected {
            return Err(parse_err(
                2,
                col + 1,
                format!("expected {expected} hex digits, found {}", chars.len()),
            ));
        }
        let v = c
            .to_digit(16)
            .ok_or_else(|| parse_err(2, col + 1, format!("'{c}' is not a hex digit")))?;
        if n == 1 && v > 3 {
            return Err(parse_err(2, col + 1, "a 1-variable table has only 2 bits"));
        }
        let bit = (expected - 1 - col) * 4;
        words[bit >> 6] |= u64::from(v) << (bit & 63);
    }
    if chars.len() < expected {
        return Err(parse_err(
            2,
            chars.len() + 1,
            format!("expected {expected} hex digits, found {}", chars.len()),
        ));
    }
    Ok(BooleanFunction::from_raw(n, words))
}

/// Lines terminated by `\n` or `\r\n`; a single trailing terminator does not
/// start a new line.
fn split_lines(text: &str) -> impl Iterator<Item = &str> {
    let trimmed = text
        .strip_suffix("\r\n")
        .or_else(|| text.strip_suffix('\n'))
        .unwrap_or(text);
    let empty = text.is_empty();
    trimmed
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .filter(move |_| !empty)
}

fn parse_header(line: &str) -> Result<usize> {
    let digits = line
        .strip_prefix("n=")
        .ok_or_else(|| parse_err(1, 1, "header must start with \"n=\""))?;
    if digits.is_empty() {
        return Err(parse_err(1, 3, "missing variable count"));
    }
    if let Some(pos) = digits.find(|c: char| !c.is_ascii_digit()) {
        return Err(parse_err(
            1,
            3 + pos,
            "variable count must be a decimal integer",
        ));
    }
    digits
        .parse::<usize>()
        .map_err(|_| parse_err(1, 3, "variable count out of range"))
}

impl std::str::FromStr for BooleanFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

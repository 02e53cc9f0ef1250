//! Text formats for matrix files.
//!
//! * `grouplist`: one record per matrix, `HM_<m>_<k>:[[[l,c],...],...]$`.
//!   Written without whitespace; read with whitespace allowed anywhere
//!   between tokens, records spanning lines, and any identifier before `:`.
//! * `dense01`: rows of `0`/`1` characters, one row per line, matrices
//!   separated by a blank line.
//! * `densepm`: the same with `+`/`-`.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use hadamard_core::{BitMatrix, Group, GroupList, PartitionMatrix, SignMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Grouplist,
    Dense01,
    Densepm,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Grouplist => "grouplist",
            Format::Dense01 => "dense01",
            Format::Densepm => "densepm",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grouplist" => Ok(Format::Grouplist),
            "dense01" => Ok(Format::Dense01),
            "densepm" => Ok(Format::Densepm),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// One parsed matrix, in the representation of its source format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Record {
    Partition(PartitionMatrix),
    Bits(BitMatrix),
    Signs(SignMatrix),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

pub fn parse(text: &str, format: Format) -> Result<Vec<Record>, ParseError> {
    match format {
        Format::Grouplist => Ok(parse_grouplist(text)?
            .into_iter()
            .map(Record::Partition)
            .collect()),
        Format::Dense01 => parse_dense(text, b'1', b'0').and_then(|blocks| {
            blocks
                .into_iter()
                .map(|(line, rows)| {
                    BitMatrix::from_rows(&rows)
                        .map(Record::Bits)
                        .or_else(|e| err(line, e.to_string()))
                })
                .collect()
        }),
        Format::Densepm => parse_dense(text, b'-', b'+').and_then(|blocks| {
            blocks
                .into_iter()
                .map(|(line, rows)| {
                    let rows: Vec<Vec<i8>> = rows
                        .into_iter()
                        .map(|r| r.into_iter().map(|b| 1 - 2 * b as i8).collect())
                        .collect();
                    SignMatrix::from_rows(&rows)
                        .map(Record::Signs)
                        .or_else(|e| err(line, e.to_string()))
                })
                .collect()
        }),
    }
}

/// Splits dense text into blocks of rows; `one` maps to 1 and `zero` to 0.
/// Each block is returned with the line number it starts on.
/// A dense block and the line it starts on.
type Block = (usize, Vec<Vec<u8>>);

fn parse_dense(text: &str, one: u8, zero: u8) -> Result<Vec<Block>, ParseError> {
    let mut blocks = Vec::new();
    let mut current: Option<(usize, Vec<Vec<u8>>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            blocks.extend(current.take());
            continue;
        }
        let mut row = Vec::with_capacity(trimmed.len());
        for (col, c) in trimmed.bytes().enumerate() {
            if c == one {
                row.push(1);
            } else if c == zero {
                row.push(0);
            } else {
                return err(
                    line,
                    format!(
                        "unexpected character {:?} in column {}, expected {:?} or {:?}",
                        c as char,
                        col + 1,
                        one as char,
                        zero as char
                    ),
                );
            }
        }
        current.get_or_insert_with(|| (line, Vec::new())).1.push(row);
    }
    blocks.extend(current);
    for (line, rows) in &blocks {
        let m = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != m) {
            return err(
                line + bad,
                format!("row has {} entries in a block of {m} rows", rows[bad].len()),
            );
        }
    }
    Ok(blocks)
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(&c) = self.bytes.get(self.pos) {
            if c == b'\n' {
                self.line += 1;
            } else if !c.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, want: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => err(
                self.line,
                format!("expected {:?}, found {:?}", want as char, c as char),
            ),
            None => err(self.line, format!("expected {:?}, found end of input", want as char)),
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return err(self.line, "expected a record name");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).expect("ASCII identifier"))
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ASCII digits");
        if digits.is_empty() {
            return err(self.line, "expected a number");
        }
        digits
            .parse()
            .or_else(|_| err(self.line, format!("number {digits} is too large")))
    }

    /// `[` item (`,` item)* `]`
    fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        self.expect(b'[')?;
        let mut out = vec![item(self)?];
        loop {
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    out.push(item(self)?);
                }
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return err(self.line, "expected ',' or ']'"),
            }
        }
    }
}

fn parse_grouplist(text: &str) -> Result<Vec<PartitionMatrix>, ParseError> {
    let mut lx = Lexer {
        bytes: text.as_bytes(),
        pos: 0,
        line: 1,
    };
    let mut out = Vec::new();
    while lx.peek().is_some() {
        let start = lx.line;
        let name = lx.ident()?;
        lx.expect(b':')?;
        let rows = lx.list(|lx| {
            lx.list(|lx| {
                let pair = lx.list(Lexer::number)?;
                match pair[..] {
                    [label, count] => Ok(Group::new(label, count as usize)),
                    _ => err(lx.line, format!("group has {} entries, expected 2", pair.len())),
                }
            })
        })?;
        lx.expect(b'$')?;
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, groups)| GroupList::new(i + 1, groups))
            .collect::<Result<Vec<_>, _>>()
            .or_else(|e| err(start, e.to_string()))?;
        let matrix = PartitionMatrix::new(rows).or_else(|e| err(start, e.to_string()))?;
        if let Some(m) = declared_order(name) {
            if m != matrix.size() {
                return err(
                    start,
                    format!("record {name} declares m={m} but holds {} rows", matrix.size()),
                );
            }
        }
        out.push(matrix);
    }
    Ok(out)
}

/// `HM_<m>_<k>` -> `m`.
fn declared_order(name: &str) -> Option<usize> {
    let rest = name.strip_prefix("HM_")?;
    let (m, k) = rest.split_once('_')?;
    k.parse::<u64>().ok()?;
    m.parse().ok()
}

/// Streams records in one format, numbering grouplist records from 1.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    written: u64,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Self {
            out,
            format,
            written: 0,
        }
    }

    pub fn written(&self) -> u64 {
        self.written
    }

    fn separate(&mut self) -> io::Result<()> {
        if self.written > 0 {
            writeln!(self.out)?;
        }
        Ok(())
    }

    pub fn write_partition(&mut self, p: &PartitionMatrix) -> io::Result<()> {
        self.written += 1;
        writeln!(self.out, "HM_{}_{}:{p}$", p.size(), self.written)
    }

    pub fn write_bits(&mut self, t: &BitMatrix) -> io::Result<()> {
        self.separate()?;
        self.written += 1;
        write!(self.out, "{t}")
    }

    pub fn write_signs(&mut self, h: &SignMatrix) -> io::Result<()> {
        self.separate()?;
        self.written += 1;
        write!(self.out, "{h}")
    }

    /// Writes a generated matrix in this writer's format.
    pub fn write_generated(&mut self, p: &PartitionMatrix) -> io::Result<()> {
        match self.format {
            Format::Grouplist => self.write_partition(p),
            Format::Dense01 => self.write_bits(&hadamard_core::decode_matrix(p)),
            Format::Densepm => {
                self.write_signs(&hadamard_core::pm_from_zo(&hadamard_core::decode_matrix(p)))
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

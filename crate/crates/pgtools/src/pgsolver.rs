//! Reading and writing parity games in the PGSolver plain-text format.
//!
//! A game file is an optional header `parity <max-vertex-id>;` followed by
//! one record per vertex:
//!
//! ```text
//! <id> <priority> <owner> <succ>,<succ>,... ["<label>"];
//! ```
//!
//! Owner `0` is [`Player::Even`], owner `1` is [`Player::Odd`]. Whitespace
//! between tokens is insignificant. The writer always emits the canonical
//! form: header present, vertices in ascending id order, successor lists
//! ascending, labels quoted.
//!
//! [`parse_pgsolver_bytes`] additionally accepts bzip2-compressed input,
//! recognized by its magic bytes; writing always emits plain text.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::game::{Diagnostic, GameBuilder, ParityGame, Player, VertexId};

/// How strictly the parser treats vertex ids.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// With `lenient` set, ids with gaps (e.g. `{0, 2}`) are renumbered
    /// densely in order instead of rejected.
    pub lenient: bool,
}

/// A parsed game together with non-fatal findings, such as duplicate
/// successor entries that were collapsed.
#[derive(Debug)]
pub struct ParseOutcome {
    pub game: ParityGame,
    pub warnings: Vec<Diagnostic>,
}

/// Parse failure with a 1-based source position where one is meaningful.
#[derive(Debug, Error, PartialEq, Eq)]
pub struct ParseError {
    pub position: Option<(usize, usize)>,
    pub kind: ParseErrorKind,
}

#[derive(Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Lexical or grammatical problem; the message names the offender.
    Syntax(String),
    /// A vertex record with no successors violates totality.
    EmptySuccessors { vertex: VertexId },
    /// The same id was defined twice.
    DuplicateVertex { vertex: VertexId },
    /// An id below the bound (header or highest id used) has no record.
    MissingVertex { vertex: VertexId },
    /// A successor refers to an id that is never defined.
    DanglingEdge { vertex: VertexId, successor: VertexId },
    /// The input contains no vertex records at all.
    EmptyGame,
    /// The input looked bzip2-compressed but did not decompress.
    Decompress(String),
    /// Decompressed or raw input is not valid UTF-8.
    InvalidUtf8,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((line, column)) = self.position {
            write!(f, "line {line}, column {column}: ")?;
        }
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "{msg}"),
            ParseErrorKind::EmptySuccessors { vertex } => {
                write!(f, "vertex {vertex} has an empty successor list")
            }
            ParseErrorKind::DuplicateVertex { vertex } => {
                write!(f, "vertex {vertex} is defined twice")
            }
            ParseErrorKind::MissingVertex { vertex } => {
                write!(f, "vertex {vertex} is never defined")
            }
            ParseErrorKind::DanglingEdge { vertex, successor } => {
                write!(f, "vertex {vertex} has undefined successor {successor}")
            }
            ParseErrorKind::EmptyGame => write!(f, "input defines no vertices"),
            ParseErrorKind::Decompress(msg) => write!(f, "bzip2 decompression failed: {msg}"),
            ParseErrorKind::InvalidUtf8 => write!(f, "input is not valid UTF-8"),
        }
    }
}

/// Failure to read a game from disk.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Int(u64),
    Parity,
    Str(String),
    Comma,
    Semicolon,
    Eof,
}

struct Lexer<'a> {
    rest: std::str::Chars<'a>,
    line: usize,
    column: usize,
    /// Position at which the most recent token started.
    token_pos: (usize, usize),
    peeked: Option<char>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer { rest: text.chars(), line: 1, column: 1, token_pos: (1, 1), peeked: None }
    }

    fn peek_char(&mut self) -> Option<char> {
        if self.peeked.is_none() {
            self.peeked = self.rest.next();
        }
        self.peeked
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peeked.take().or_else(|| self.rest.next())?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError { position: Some(self.token_pos), kind: ParseErrorKind::Syntax(msg.into()) }
    }

    fn next_token(&mut self) -> Result<Token, ParseError> {
        while matches!(self.peek_char(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
        self.token_pos = (self.line, self.column);
        let Some(c) = self.peek_char() else { return Ok(Token::Eof) };
        match c {
            ',' => {
                self.bump();
                Ok(Token::Comma)
            }
            ';' => {
                self.bump();
                Ok(Token::Semicolon)
            }
            '"' => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => return Ok(Token::Str(s)),
                        Some(c) => s.push(c),
                        None => return Err(self.error("unterminated label")),
                    }
                }
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                while let Some(d) = self.peek_char().and_then(|c| c.to_digit(10)) {
                    self.bump();
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d as u64))
                        .ok_or_else(|| self.error("number is too large"))?;
                }
                Ok(Token::Int(value))
            }
            c if c.is_alphabetic() => {
                let mut word = String::new();
                while matches!(self.peek_char(), Some(c) if c.is_alphanumeric() || c == '_') {
                    word.push(self.bump().unwrap());
                }
                if word == "parity" {
                    Ok(Token::Parity)
                } else {
                    Err(self.error(format!("unexpected word `{word}`")))
                }
            }
            c => Err(self.error(format!("unexpected character `{c}`"))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    token: Token,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Parser<'a>, ParseError> {
        let mut lexer = Lexer::new(text);
        let token = lexer.next_token()?;
        Ok(Parser { lexer, token })
    }

    fn advance(&mut self) -> Result<Token, ParseError> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.token, next))
    }

    fn pos(&self) -> (usize, usize) {
        self.lexer.token_pos
    }

    fn expect_int(&mut self, what: &str) -> Result<(u64, (usize, usize)), ParseError> {
        let pos = self.pos();
        match self.advance()? {
            Token::Int(v) => Ok((v, pos)),
            other => Err(ParseError {
                position: Some(pos),
                kind: ParseErrorKind::Syntax(format!("expected {what}, found {}", name(&other))),
            }),
        }
    }

    fn expect_vertex_id(&mut self, what: &str) -> Result<(VertexId, (usize, usize)), ParseError> {
        let (v, pos) = self.expect_int(what)?;
        // VertexId::MAX is reserved as a sentinel by the builder.
        if v >= VertexId::MAX as u64 {
            return Err(ParseError {
                position: Some(pos),
                kind: ParseErrorKind::Syntax(format!("{what} {v} is out of range")),
            });
        }
        Ok((v as VertexId, pos))
    }
}

fn name(token: &Token) -> String {
    match token {
        Token::Int(v) => format!("number {v}"),
        Token::Parity => "`parity`".to_string(),
        Token::Str(_) => "a label".to_string(),
        Token::Comma => "`,`".to_string(),
        Token::Semicolon => "`;`".to_string(),
        Token::Eof => "end of input".to_string(),
    }
}

struct Record {
    id: VertexId,
    owner: Player,
    priority: u32,
    label: Option<String>,
    successors: Vec<VertexId>,
    pos: (usize, usize),
}

/// Parses a game in strict mode; see [`parse_pgsolver_with`].
pub fn parse_pgsolver(text: &str) -> Result<ParseOutcome, ParseError> {
    parse_pgsolver_with(text, ParseOptions::default())
}

/// Parses a game from text.
///
/// In strict mode (the default) the defined vertex ids must form the dense
/// range `0..=max`, where `max` is the larger of the header bound and the
/// highest id used; gaps are [`ParseErrorKind::MissingVertex`] errors. In
/// lenient mode gaps are closed by renumbering the defined ids in order.
/// Either way the resulting game is valid: total, in range, canonical
/// successor lists. Duplicate successor entries are collapsed and surface
/// as warnings in the [`ParseOutcome`].
pub fn parse_pgsolver_with(text: &str, options: ParseOptions) -> Result<ParseOutcome, ParseError> {
    let mut p = Parser::new(text)?;

    let mut declared: Option<(VertexId, (usize, usize))> = None;
    if p.token == Token::Parity {
        p.advance()?;
        let (bound, pos) = p.expect_vertex_id("header bound")?;
        declared = Some((bound, pos));
        let semi_pos = p.pos();
        match p.advance()? {
            Token::Semicolon => {}
            other => {
                return Err(ParseError {
                    position: Some(semi_pos),
                    kind: ParseErrorKind::Syntax(format!(
                        "expected `;` after header, found {}",
                        name(&other)
                    )),
                })
            }
        }
    }

    let mut records: Vec<Record> = Vec::new();
    while p.token != Token::Eof {
        let (id, pos) = p.expect_vertex_id("vertex id")?;
        let (priority, prio_pos) = p.expect_int("priority")?;
        if priority > u32::MAX as u64 {
            return Err(ParseError {
                position: Some(prio_pos),
                kind: ParseErrorKind::Syntax(format!("priority {priority} is out of range")),
            });
        }
        let (owner, owner_pos) = p.expect_int("owner")?;
        let owner = match owner {
            0 => Player::Even,
            1 => Player::Odd,
            other => {
                return Err(ParseError {
                    position: Some(owner_pos),
                    kind: ParseErrorKind::Syntax(format!("owner must be 0 or 1, found {other}")),
                })
            }
        };

        let mut successors = Vec::new();
        if let Token::Int(_) = p.token {
            loop {
                let (w, _) = p.expect_vertex_id("successor")?;
                successors.push(w);
                if p.token == Token::Comma {
                    p.advance()?;
                } else {
                    break;
                }
            }
        }
        if successors.is_empty() {
            return Err(ParseError {
                position: Some(pos),
                kind: ParseErrorKind::EmptySuccessors { vertex: id },
            });
        }

        let label = if let Token::Str(_) = p.token {
            match p.advance()? {
                Token::Str(s) => Some(s),
                _ => unreachable!(),
            }
        } else {
            None
        };

        let semi_pos = p.pos();
        match p.advance()? {
            Token::Semicolon => {}
            other => {
                return Err(ParseError {
                    position: Some(semi_pos),
                    kind: ParseErrorKind::Syntax(format!(
                        "expected `;` after vertex record, found {}",
                        name(&other)
                    )),
                })
            }
        }
        records.push(Record { id, owner, priority: priority as u32, label, successors, pos });
    }

    if records.is_empty() {
        return Err(ParseError { position: None, kind: ParseErrorKind::EmptyGame });
    }

    // Semantic checks with source positions. The id bound grows beyond the
    // header if higher ids are used, mirroring PGSolver's reader.
    let max_used = records.iter().map(|r| r.id).max().unwrap();
    let bound = declared.map_or(max_used, |(b, _)| b.max(max_used));

    let mut defined_at: Vec<Option<(usize, usize)>> = vec![None; bound as usize + 1];
    for r in &records {
        if let Some(_first) = defined_at[r.id as usize] {
            return Err(ParseError {
                position: Some(r.pos),
                kind: ParseErrorKind::DuplicateVertex { vertex: r.id },
            });
        }
        defined_at[r.id as usize] = Some(r.pos);
    }
    if !options.lenient {
        for id in 0..=bound {
            if defined_at[id as usize].is_none() {
                return Err(ParseError {
                    position: declared.map(|(_, pos)| pos),
                    kind: ParseErrorKind::MissingVertex { vertex: id },
                });
            }
        }
    }
    for r in &records {
        for &w in &r.successors {
            if w > bound || defined_at[w as usize].is_none() {
                return Err(ParseError {
                    position: Some(r.pos),
                    kind: ParseErrorKind::DanglingEdge { vertex: r.id, successor: w },
                });
            }
        }
    }

    let mut builder = GameBuilder::new();
    for r in records {
        builder
            .add_vertex(r.id, r.owner, r.priority, r.label, r.successors)
            .expect("duplicates were checked above");
    }
    let outcome = if options.lenient { builder.finish_lenient() } else { builder.finish() };
    match outcome {
        Ok(built) => Ok(ParseOutcome { game: built.game, warnings: built.warnings }),
        // All fatal conditions were already reported with positions.
        Err(err) => Err(ParseError {
            position: None,
            kind: ParseErrorKind::Syntax(err.to_string()),
        }),
    }
}

/// Magic bytes of a bzip2 stream: `BZh` followed by the block-size digit.
fn looks_like_bzip2(bytes: &[u8]) -> bool {
    bytes.len() >= 4 && &bytes[..3] == b"BZh" && bytes[3].is_ascii_digit()
}

/// Parses a game from raw bytes, transparently decompressing bzip2 input
/// (recognized by its magic bytes).
pub fn parse_pgsolver_bytes(bytes: &[u8], options: ParseOptions) -> Result<ParseOutcome, ParseError> {
    let text: String;
    if looks_like_bzip2(bytes) {
        let mut decoder = bzip2::read::MultiBzDecoder::new(bytes);
        let mut buf = Vec::new();
        decoder.read_to_end(&mut buf).map_err(|e| ParseError {
            position: None,
            kind: ParseErrorKind::Decompress(e.to_string()),
        })?;
        text = String::from_utf8(buf)
            .map_err(|_| ParseError { position: None, kind: ParseErrorKind::InvalidUtf8 })?;
    } else {
        text = std::str::from_utf8(bytes)
            .map_err(|_| ParseError { position: None, kind: ParseErrorKind::InvalidUtf8 })?
            .to_string();
    }
    parse_pgsolver_with(&text, options)
}

/// Reads a game file from disk, plain or bzip2-compressed.
pub fn read_game_file(path: &Path, options: ParseOptions) -> Result<ParseOutcome, FileError> {
    let bytes = fs::read(path)?;
    Ok(parse_pgsolver_bytes(&bytes, options)?)
}

/// Writes the canonical form to any sink: header, ascending ids, ascending
/// successor lists, labels quoted.
pub fn write_pgsolver_to<W: Write>(game: &ParityGame, out: &mut W) -> io::Result<()> {
    writeln!(out, "parity {};", game.num_vertices().saturating_sub(1))?;
    for v in game.vertices() {
        write!(out, "{v} {} {}", game.priority(v), game.owner(v).as_bit())?;
        for (i, w) in game.successors(v).iter().enumerate() {
            if i == 0 {
                write!(out, " {w}")?;
            } else {
                write!(out, ",{w}")?;
            }
        }
        if let Some(label) = game.label(v) {
            write!(out, " \"{label}\"")?;
        }
        writeln!(out, ";")?;
    }
    Ok(())
}

/// Renders the canonical form as a string; see [`write_pgsolver_to`].
pub fn write_pgsolver(game: &ParityGame) -> String {
    let mut buf = Vec::new();
    write_pgsolver_to(game, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("writer emits UTF-8")
}

/// Writes the canonical form to a file.
pub fn write_game_file(game: &ParityGame, path: &Path) -> io::Result<()> {
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    write_pgsolver_to(game, &mut out)?;
    out.flush()
}

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Byte range `start..end` into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        assert!(start <= end, "span start {start} after end {end}");
        SourceSpan { start, end }
    }

    pub fn to(self, other: SourceSpan) -> Self {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseErrorKind {
    Syntax,
    UnknownVariable,
    Inhomogeneous,
    Arity,
    ZeroDenominator,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{message} at {span}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, message: impl Into<String>, span: SourceSpan) -> Self {
        ParseError { kind, message: message.into(), span }
    }

    pub(crate) fn syntax(message: impl Into<String>, span: SourceSpan) -> Self {
        Self::new(ParseErrorKind::Syntax, message, span)
    }

    /// The error with the offending line of `input` and a caret marker.
    pub fn render(&self, input: &str) -> String {
        let start = self.span.start.min(input.len());
        let line_start = input[..start].rfind('\n').map_or(0, |i| i + 1);
        let line_end = input[start..].find('\n').map_or(input.len(), |i| start + i);
        let line_no = input[..line_start].matches('\n').count() + 1;
        let col = input[line_start..start].chars().count();
        let width = input[start..self.span.end.min(line_end).max(start)].chars().count().max(1);
        format!(
            "error: {}\n{:>4} | {}\n     | {}{}",
            self.message,
            line_no,
            &input[line_start..line_end],
            " ".repeat(col),
            "^".repeat(width)
        )
    }
}

//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff ['*']] factor ('*'? factor)*  |  coeff
//! factor := ('x'|'y'|'z') ['^' nat]
//! coeff  := int | int '/' int
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use cremona::{QPoly, Rat, RatFunc1, UniPoly};

use crate::error::{ParseError, ParseErrorKind, SourceSpan};
use crate::lex::{lex, Tok, Token};

/// One parsed monomial term with its source span.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub exps: [u32; 3],
    pub coeff: Rat,
    pub span: SourceSpan,
}

pub(crate) struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    /// Offset just past the input, for errors at end of input.
    end: usize,
    /// Number of admissible variables: 3 for `x, y, z`, 1 for `x` alone.
    nvars: usize,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: &'a [Token], end: usize, nvars: usize) -> Self {
        Parser { toks, pos: 0, end, nvars }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> SourceSpan {
        self.toks.get(self.pos).map_or(SourceSpan::new(self.end, self.end), |t| t.span)
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos - 1].span
    }

    fn bump(&mut self) -> &'a Token {
        let t = &self.toks[self.pos];
        self.pos += 1;
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<SourceSpan, ParseError> {
        if self.eat(tok) {
            Ok(self.prev_span())
        } else {
            Err(self.unexpected(&format!("expected {}", tok.describe())))
        }
    }

    pub(crate) fn unexpected(&self, what: &str) -> ParseError {
        let found = self.peek().map_or("end of input".to_string(), Tok::describe);
        ParseError::syntax(format!("{what}, found {found}"), self.here())
    }

    pub(crate) fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("expected end of input"))
        }
    }

    fn nat(&mut self) -> Result<(BigInt, SourceSpan), ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                Ok((n, self.bump().span))
            }
            _ => Err(self.unexpected("expected a number")),
        }
    }

    /// `int | int '/' int`; the slash is left alone unless a number
    /// follows it.
    fn coeff(&mut self) -> Result<Rat, ParseError> {
        let (num, span) = self.nat()?;
        if self.peek() == Some(&Tok::Slash) && matches!(self.peek_at(1), Some(Tok::Int(_))) {
            self.bump();
            let (den, dspan) = self.nat()?;
            if den.is_zero() {
                return Err(ParseError::new(ParseErrorKind::ZeroDenominator, "zero denominator", span.to(dspan)));
            }
            return Ok(Rat::new(num, den));
        }
        Ok(Rat::from_integer(num))
    }

    /// A signed rational `['-'] coeff`.
    pub(crate) fn signed_rat(&mut self) -> Result<(Rat, SourceSpan), ParseError> {
        let start = self.here();
        let neg = self.eat(&Tok::Minus);
        if !neg {
            self.eat(&Tok::Plus);
        }
        let c = self.coeff()?;
        Ok((if neg { -c } else { c }, start.to(self.prev_span())))
    }

    fn is_factor_start(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)))
    }

    fn factor(&mut self, exps: &mut [u32; 3]) -> Result<(), ParseError> {
        let t = self.bump();
        let Tok::Ident(name) = &t.tok else { unreachable!("checked by is_factor_start") };
        let idx = match name.as_str() {
            "x" => 0,
            "y" if self.nvars == 3 => 1,
            "z" if self.nvars == 3 => 2,
            _ => {
                let allowed = if self.nvars == 3 { "x, y, z" } else { "x" };
                return Err(ParseError::new(
                    ParseErrorKind::UnknownVariable,
                    format!("unknown variable '{name}' (expected {allowed})"),
                    t.span,
                ));
            }
        };
        let mut e = 1u32;
        if self.eat(&Tok::Caret) {
            let (n, span) = self.nat()?;
            e = u32::try_from(&n)
                .ok()
                .filter(|&v| v <= 1 << 16)
                .ok_or_else(|| ParseError::new(ParseErrorKind::Invalid, format!("exponent {n} is too large"), span))?;
        }
        exps[idx] += e;
        Ok(())
    }

    fn term(&mut self, sign: bool) -> Result<Term, ParseError> {
        let start = self.here();
        let mut coeff = Rat::one();
        let mut exps = [0u32; 3];
        let mut any = false;
        if matches!(self.peek(), Some(Tok::Int(_))) {
            coeff = self.coeff()?;
            any = true;
            if self.eat(&Tok::Star) && !self.is_factor_start() {
                return Err(self.unexpected("expected a variable after '*'"));
            }
        }
        if self.is_factor_start() {
            self.factor(&mut exps)?;
            any = true;
            loop {
                if self.peek() == Some(&Tok::Star) {
                    self.bump();
                    if !self.is_factor_start() {
                        return Err(self.unexpected("expected a variable after '*'"));
                    }
                } else if !self.is_factor_start() {
                    break;
                }
                self.factor(&mut exps)?;
            }
        }
        if !any {
            return Err(self.unexpected("expected a term"));
        }
        if sign {
            coeff = -coeff;
        }
        Ok(Term { exps, coeff, span: start.to(self.prev_span()) })
    }

    /// A signed sum of terms. Stops before any token that cannot continue
    /// the sum.
    pub(crate) fn sum(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut neg = false;
        if self.eat(&Tok::Minus) {
            neg = true;
        } else {
            self.eat(&Tok::Plus);
        }
        let mut terms = vec![self.term(neg)?];
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.bump();
            terms.push(self.term(neg)?);
        }
        Ok(terms)
    }
}

/// Combines terms into a form, reporting the first term whose degree
/// differs from the first term's.
pub(crate) fn homogeneous(terms: Vec<Term>) -> Result<QPoly, ParseError> {
    let deg = |t: &Term| t.exps.iter().sum::<u32>();
    let d0 = deg(&terms[0]);
    if let Some(bad) = terms.iter().find(|t| deg(t) != d0) {
        return Err(ParseError::new(
            ParseErrorKind::Inhomogeneous,
            format!("inhomogeneous polynomial: found terms of degree {d0} and {}", deg(bad)),
            bad.span,
        ));
    }
    Ok(QPoly::from_terms(terms.into_iter().map(|t| (t.exps, t.coeff))).expect("degrees checked"))
}

pub(crate) fn poly_at(text: &str, base: usize) -> Result<QPoly, ParseError> {
    let toks = lex(text, base)?;
    let mut p = Parser::new(&toks, base + text.len(), 3);
    let terms = p.sum()?;
    p.expect_end()?;
    homogeneous(terms)
}

/// Parses a homogeneous polynomial in `x, y, z` exactly as written.
pub fn parse_poly_raw(text: &str) -> Result<QPoly, ParseError> {
    poly_at(text, 0)
}

/// Parses a homogeneous polynomial in `x, y, z`, returning its canonical
/// representative (primitive integer coefficients, positive leading
/// coefficient).
pub fn parse_poly(text: &str) -> Result<QPoly, ParseError> {
    Ok(parse_poly_raw(text)?.canonical())
}

/// Parses `f0; f1; f2`. Components keep their scaling; equal degrees are
/// checked when the map is built.
pub fn parse_map(text: &str) -> Result<[QPoly; 3], ParseError> {
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == ';' {
            parts.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    parts.push((start, &text[start..]));
    // a trailing ';' is tolerated
    if parts.len() == 4 && lex(parts[3].1, 0).is_ok_and(|t| t.is_empty()) {
        parts.pop();
    }
    if parts.len() != 3 {
        return Err(ParseError::new(
            ParseErrorKind::Arity,
            format!("a map needs 3 components separated by ';', found {}", parts.len()),
            SourceSpan::new(0, text.len()),
        ));
    }
    let mut out = Vec::with_capacity(3);
    for (off, part) in parts {
        if lex(part, off)?.is_empty() {
            return Err(ParseError::syntax("empty component", SourceSpan::new(off, off + part.len())));
        }
        out.push(poly_at(part, off)?);
    }
    Ok(out.try_into().expect("three components"))
}

fn upoly(terms: Vec<Term>) -> UniPoly<Rat> {
    let deg = terms.iter().map(|t| t.exps[0] as usize).max().unwrap_or(0);
    let mut c = vec![Rat::zero(); deg + 1];
    for t in terms {
        c[t.exps[0] as usize] += t.coeff;
    }
    UniPoly::new(c)
}

fn ugroup(p: &mut Parser) -> Result<(UniPoly<Rat>, SourceSpan), ParseError> {
    let start = p.here();
    let poly = if p.eat(&Tok::LParen) {
        let terms = p.sum()?;
        p.expect(&Tok::RParen)?;
        upoly(terms)
    } else {
        upoly(p.sum()?)
    };
    Ok((poly, start.to(p.prev_span())))
}

/// Parses `num` or `num / den` in the variable `x`; either side may be
/// parenthesized.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc1, ParseError> {
    let toks = lex(text, 0)?;
    let mut p = Parser::new(&toks, text.len(), 1);
    let (num, _) = ugroup(&mut p)?;
    let mut den = UniPoly::one();
    if p.eat(&Tok::Slash) {
        let (d, span) = ugroup(&mut p)?;
        if d.is_zero() {
            return Err(ParseError::new(ParseErrorKind::ZeroDenominator, "zero denominator", span));
        }
        den = d;
    }
    p.expect_end()?;
    Ok(RatFunc1::new(num, den).expect("denominator is nonzero"))
}

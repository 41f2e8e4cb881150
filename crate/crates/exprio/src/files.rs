//! Line-based file formats.
//!
//! Curve files hold `F = <poly>` and any number of
//! `sing = <x>,<y>,<z> : <mult>` lines. Point files hold one `x,y,z` per
//! line. Blank lines and `#` comments are ignored in both.

use cremona::{PlaneCurve, QPoint, QPoly, Rat};

use crate::error::{ParseError, ParseErrorKind, SourceSpan};
use crate::lex::{lex, Tok};
use crate::parse::{poly_at, Parser};

/// Parsed curve file, before the singularities are verified.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub form: QPoly,
    pub sing: Vec<(QPoint, u32)>,
}

impl CurveSpec {
    /// Builds the curve, verifying every declared singular point.
    pub fn build(&self) -> cremona::Result<PlaneCurve> {
        PlaneCurve::new(self.form.clone(), self.sing.clone())
    }
}

/// Non-blank, non-comment lines with their byte offsets.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut off = 0;
    text.split_inclusive('\n').filter_map(move |raw| {
        let start = off;
        off += raw.len();
        let body = raw.split('#').next().unwrap().trim_end();
        (!body.trim().is_empty()).then_some((start, body))
    })
}

fn point_at(text: &str, base: usize) -> Result<QPoint, ParseError> {
    let toks = lex(text, base)?;
    let mut p = Parser::new(&toks, base + text.len(), 3);
    let mut c: Vec<Rat> = Vec::with_capacity(3);
    let (v, mut span) = p.signed_rat()?;
    c.push(v);
    for _ in 0..2 {
        p.expect(&Tok::Comma)?;
        let (v, s) = p.signed_rat()?;
        span = span.to(s);
        c.push(v);
    }
    p.expect_end()?;
    let [x, y, z]: [Rat; 3] = c.try_into().expect("three coordinates");
    QPoint::new(x, y, z).map_err(|_| ParseError::new(ParseErrorKind::Invalid, "the point (0:0:0) is not allowed", span))
}

/// Parses a single `x,y,z` point.
pub fn parse_point(text: &str) -> Result<QPoint, ParseError> {
    point_at(text, 0)
}

pub fn parse_points(text: &str) -> Result<Vec<QPoint>, ParseError> {
    lines(text).map(|(off, line)| point_at(line, off)).collect()
}

pub fn parse_curve(text: &str) -> Result<CurveSpec, ParseError> {
    let mut form: Option<QPoly> = None;
    let mut sing = Vec::new();
    for (off, line) in lines(text) {
        let Some(eq) = line.find('=') else {
            return Err(ParseError::syntax("expected 'key = value'", SourceSpan::new(off, off + line.len())));
        };
        let key = line[..eq].trim();
        let key_span = SourceSpan::new(off, off + eq);
        let (vstart, value) = (off + eq + 1, &line[eq + 1..]);
        match key {
            "F" => {
                if form.is_some() {
                    return Err(ParseError::new(ParseErrorKind::Invalid, "'F' given twice", key_span));
                }
                form = Some(poly_at(value, vstart)?);
            }
            "sing" => {
                let Some(colon) = value.find(':') else {
                    return Err(ParseError::syntax(
                        "expected 'sing = x,y,z : mult'",
                        SourceSpan::new(vstart, vstart + value.len()),
                    ));
                };
                let pt = point_at(&value[..colon], vstart)?;
                let mstart = vstart + colon + 1;
                let mtext = &value[colon + 1..];
                let mspan = SourceSpan::new(mstart, mstart + mtext.len());
                let m: u32 = mtext
                    .trim()
                    .parse()
                    .map_err(|_| ParseError::syntax("multiplicity must be a natural number", mspan))?;
                sing.push((pt, m));
            }
            other => {
                return Err(ParseError::new(ParseErrorKind::Invalid, format!("unknown key '{other}'"), key_span));
            }
        }
    }
    let form =
        form.ok_or_else(|| ParseError::new(ParseErrorKind::Invalid, "missing 'F = ...' line", SourceSpan::new(0, 0)))?;
    Ok(CurveSpec { form, sing })
}

/// Formats a point as `x,y,z` in its canonical scaling.
pub fn format_point(p: &QPoint) -> String {
    let [x, y, z] = p.coords();
    format!("{x},{y},{z}")
}

pub fn format_points(ps: &[QPoint]) -> String {
    ps.iter().map(|p| format_point(p) + "\n").collect()
}

pub fn format_curve(c: &CurveSpec) -> String {
    let mut s = format!("F = {}\n", c.form);
    for (p, m) in &c.sing {
        s.push_str(&format!("sing = {} : {m}\n", format_point(p)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_files() {
        let text = "# nodal cubic\nF = y^2*z - x^3 - x^2*z\n\nsing = 0,0,1 : 2\n";
        let c = parse_curve(text).unwrap();
        assert_eq!(c.sing, vec![(QPoint::from_i64(0, 0, 1), 2)]);
        assert_eq!(c.build().unwrap().degree(), 3);
        assert_eq!(parse_curve(&format_curve(&c)).unwrap(), c);

        let e = parse_curve("F = x^2 - y^2\nsing = 1,2 : 2\n").unwrap_err();
        assert_eq!(e.span, SourceSpan::new(25, 25));
        let e = parse_curve("F = x + yy\n").unwrap_err();
        assert_eq!(&"F = x + yy\n"[e.span.start..e.span.end], "yy");
        assert!(parse_curve("sing = 0,0,1 : 2\n").is_err());
        assert!(parse_curve("G = x\n").is_err());
    }

    #[test]
    fn point_files() {
        let ps = parse_points("1,2,3\n-1/2, 0, 1  # comment\n\n2,4,6\n").unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps[0], ps[2]);
        assert_eq!(format_point(&ps[1]), "-1/2,0,1");
        assert_eq!(parse_points(&format_points(&ps)).unwrap(), ps);
        let e = parse_points("1,2,3\n0,0,0\n").unwrap_err();
        assert_eq!(e.span, SourceSpan::new(6, 11));
    }
}

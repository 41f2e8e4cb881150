use std::path::Path;

use cremona::{CremonaMap, PlaneCurve, QPoint, Rat, RatFunc1, UniPoly};
use cremona_exprio::{parse_curve, parse_map, parse_point, parse_points, parse_ratfunc, CurveSpec, ParseError};

use crate::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn located<T>(r: Result<T, ParseError>, source: &str, input: &str) -> Result<T, CliError> {
    r.map_err(|error| CliError::Parse { source: source.to_string(), input: input.to_string(), error })
}

pub fn map(path: &Path) -> Result<CremonaMap, CliError> {
    let text = read(path)?;
    let raw = located(parse_map(&text), &path.display().to_string(), &text)?;
    Ok(CremonaMap::new(raw)?)
}

pub fn curve_spec(path: &Path) -> Result<CurveSpec, CliError> {
    let text = read(path)?;
    located(parse_curve(&text), &path.display().to_string(), &text)
}

pub fn curve(path: &Path) -> Result<PlaneCurve, CliError> {
    Ok(curve_spec(path)?.build()?)
}

pub fn points(path: &Path) -> Result<Vec<QPoint>, CliError> {
    let text = read(path)?;
    located(parse_points(&text), &path.display().to_string(), &text)
}

pub fn point(text: &str) -> Result<QPoint, CliError> {
    located(parse_point(text), "point argument", text)
}

pub fn ratfunc(text: &str, what: &str) -> Result<RatFunc1, CliError> {
    located(parse_ratfunc(text), what, text)
}

pub fn upoly(text: &str, what: &str) -> Result<UniPoly<Rat>, CliError> {
    let f = ratfunc(text, what)?;
    if !f.is_polynomial() {
        return Err(CliError::Domain(cremona::Error::Precondition(format!("{what} must be a polynomial"))));
    }
    Ok(f.num().clone())
}

use serde_json::json;

use cremona::classical::{
    bertini_point, extend_hyperelliptic_auto, geiser_map, geiser_point, jh_homogenize, jh_make, jh_to_affine,
    pencil_ninth_point,
};
use cremona::curve::{
    adjoint, adjoint_tower, basepoint_theorem_check, coble_check, fixes, halphen_check, image_curve, linear_system,
    preserves,
};
use cremona::dynamics::{degree_sequence_with, dyn_degree_estimate, DegreeMethod};
use cremona::map::homaloidal_check;
use cremona::{CremonaMap, Error, QPoint, QPoly};
use cremona_exprio::{format_map, format_point};

use crate::args::{Command, Flags};
use crate::{corpus, input, CliError, CliResult, Outcome};

fn map_outcome(m: &CremonaMap) -> Outcome {
    Outcome::new(format_map(m), json!({ "map": format_map(m), "degree": m.degree() }))
}

fn point_outcome(p: &QPoint) -> Outcome {
    Outcome::new(format_point(p), json!({ "point": format_point(p) }))
}

fn bool_outcome(key: &str, v: bool) -> Outcome {
    Outcome::new(v.to_string(), json!({ key: v }))
}

fn basis_text(basis: &[QPoly]) -> String {
    basis.iter().map(|f| format!("{f}\n")).collect()
}

fn check_iter(n: u32, flags: &Flags) -> Result<(), CliError> {
    if n > flags.max_iter {
        return Err(Error::Precondition(format!("{n} exceeds --max-iter {}", flags.max_iter)).into());
    }
    Ok(())
}

pub fn dispatch(cmd: &Command, flags: &Flags) -> CliResult {
    match cmd {
        Command::Compose { a, b } => {
            let (a, b) = (input::map(a)?, input::map(b)?);
            let (m, factor) = a.compose_with_factor(&b)?;
            Ok(map_outcome(&m).witness([factor]))
        }
        Command::Power { map, k } => {
            check_iter(*k, flags)?;
            Ok(map_outcome(&input::map(&map.map)?.power(*k as u64)?))
        }
        Command::Apply { map, point } => {
            let m = input::map(&map.map)?;
            Ok(point_outcome(&m.apply(&input::point(point)?)?))
        }
        Command::InverseCheck { map, inverse } => {
            let (m, i) = (input::map(&map.map)?, input::map(inverse)?);
            Ok(bool_outcome("inverse", m.verify_inverse(&i)))
        }
        Command::FixedCurve { map } => {
            let m = input::map(&map.map)?;
            Ok(match m.fixed_curve()? {
                Some(f) => Outcome::new(f.to_string(), json!({ "curve": f.to_string(), "degree": f.degree() })),
                None => Outcome::new("none", json!({ "curve": null })),
            }
            .witness(m.fixed_minors()))
        }
        Command::Basepoints { map } => {
            let bps = input::map(&map.map)?.rational_base_points_seeded(flags.seed)?;
            let text: String =
                bps.iter().map(|b| format!("{} : {}\n", format_point(&b.point), b.multiplicity)).collect();
            let list: Vec<_> = bps
                .iter()
                .map(|b| json!({ "point": format_point(&b.point), "multiplicity": b.multiplicity }))
                .collect();
            Ok(Outcome::new(text, json!({ "base_points": list })))
        }
        Command::Homaloidal { map, mults } => {
            let m = input::map(&map.map)?;
            let mults = match mults {
                Some(v) => v.clone(),
                None => m.rational_base_points_seeded(flags.seed)?.iter().map(|b| b.multiplicity).collect(),
            };
            let r = homaloidal_check(m.degree(), &mults);
            let text = format!(
                "{}\nsum {} (expected {})\nsum of squares {} (expected {})",
                if r.pass { "pass" } else { "fail" },
                r.sum,
                r.expected_sum,
                r.sum_sq,
                r.expected_sum_sq
            );
            Ok(Outcome::new(text, &r))
        }
        Command::Preserves { map, curve } => {
            let (m, c) = (input::map(&map.map)?, input::curve(&curve.curve)?);
            Ok(match preserves(&m, c.form()) {
                Some(cof) => Outcome::new(format!("true\ncofactor {cof}"), json!({ "preserves": true })).witness([cof]),
                None => bool_outcome("preserves", false),
            })
        }
        Command::Fixes { map, curve } => {
            let (m, c) = (input::map(&map.map)?, input::curve(&curve.curve)?);
            Ok(bool_outcome("fixes", fixes(&m, c.form())))
        }
        Command::Image { map, inverse, curve } => {
            let (m, i, c) = (input::map(&map.map)?, input::map(inverse)?, input::curve(&curve.curve)?);
            let g = image_curve(&m, &i, c.form())?;
            Ok(Outcome::new(g.to_string(), json!({ "curve": g.to_string(), "degree": g.degree() })))
        }
        Command::Genus { curve } => {
            let g = input::curve(&curve.curve)?.genus()?;
            Ok(Outcome::new(g.to_string(), json!({ "genus": g })))
        }
        Command::Adjoint { curve } => {
            let sys = adjoint(&input::curve(&curve.curve)?)?;
            let text = format!("dimension {}\n{}", sys.dimension(), basis_text(&sys.basis));
            Ok(Outcome::new(text, json!({ "degree": sys.degree, "dimension": sys.dimension() })).witness(&sys.basis))
        }
        Command::AdjointTower { curve } => {
            let steps = adjoint_tower(&input::curve(&curve.curve)?)?;
            let text: String = steps
                .iter()
                .map(|s| {
                    format!(
                        "degree {} basis {} genus-proxy {}{}\n",
                        s.degree,
                        s.basis_size,
                        s.genus_proxy,
                        if s.divergent { " divergent" } else { "" }
                    )
                })
                .collect();
            Ok(Outcome::new(text, json!({ "steps": steps })))
        }
        Command::Linsys { degree, points, mult } => {
            let conds: Vec<(QPoint, u32)> = input::points(&points.points)?.into_iter().map(|p| (p, *mult)).collect();
            let sys = linear_system(*degree, &conds)?;
            let text = format!("dimension {}\n{}", sys.dimension(), basis_text(&sys.basis));
            Ok(Outcome::new(text, json!({ "degree": sys.degree, "dimension": sys.dimension() })).witness(&sys.basis))
        }
        Command::BpTheorem { map, curve, bound } => {
            let (m, c) = (input::map(&map.map)?, input::curve(&curve.curve)?);
            let r = basepoint_theorem_check(&c, &m, bound.unwrap_or(c.degree()))?;
            let mut text = format!("{}\n", if r.pass { "pass" } else { "fail" });
            for e in &r.entries {
                text.push_str(&format!(
                    "{} map {} curve {}{}\n",
                    e.point,
                    e.map_multiplicity,
                    e.curve_multiplicity,
                    if e.ok { "" } else { " violation" }
                ));
            }
            if r.nonlinear_excluded {
                text.push_str("no nonlinear map can pass on this curve\n");
            }
            Ok(Outcome::new(text, &r))
        }
        Command::HalphenCheck { points, n } => {
            let r = halphen_check(&input::points(&points.points)?, *n)?;
            let text = format!("dimension {}\n{}", r.dimension, basis_text(&r.system.basis));
            Ok(Outcome::new(text, json!({ "dimension": r.dimension, "pencil": r.pencil })).witness(&r.system.basis))
        }
        Command::CobleCheck { curve } => {
            // building the curve verifies every declared node
            let ok = match input::curve(&curve.curve) {
                Ok(c) => coble_check(&c),
                Err(CliError::Domain(Error::InvalidCurve(_))) => false,
                Err(e) => return Err(e),
            };
            Ok(bool_outcome("coble", ok))
        }
        Command::Dejonq { h, a1, a2, affine } => {
            let h = input::upoly(h, "h")?;
            let e = jh_make(&h, &input::ratfunc(a1, "a1")?, &input::ratfunc(a2, "a2")?)?;
            let element = json!({ "a1": e.a1().to_string(), "a2": e.a2().to_string(), "h": e.h().to_string() });
            if *affine {
                let a = jh_to_affine(&e);
                Ok(Outcome::new(a.to_string(), json!({ "affine": a.to_string(), "element": element })))
            } else {
                let m = jh_homogenize(&e)?;
                let mut o = map_outcome(&m);
                o.result["element"] = element;
                Ok(o)
            }
        }
        Command::ExtendAuto { h, mu, c, eps } => {
            let h = input::upoly(h, "h")?;
            let a = extend_hyperelliptic_auto(&h, &input::ratfunc(mu, "mu")?, &input::ratfunc(c, "c")?, *eps)?;
            Ok(Outcome::new(a.to_string(), json!({ "affine": a.to_string() })))
        }
        Command::NinthPoint { points } => Ok(point_outcome(&pencil_ninth_point(&input::points(&points.points)?)?)),
        Command::GeiserPoint { points, point } => {
            Ok(point_outcome(&geiser_point(&input::points(&points.points)?, &input::point(point)?)?))
        }
        Command::GeiserMap { points } => Ok(map_outcome(&geiser_map(&input::points(&points.points)?)?)),
        Command::BertiniPoint { points, point } => {
            Ok(point_outcome(&bertini_point(&input::points(&points.points)?, &input::point(point)?)?))
        }
        Command::Degseq { map, n } => {
            check_iter(*n, flags)?;
            let seq = sequence(&input::map(&map.map)?, *n, flags)?;
            Ok(Outcome::new(seq.to_csv(), &seq))
        }
        Command::Dyndeg { map, n } => {
            check_iter(*n, flags)?;
            let seq = sequence(&input::map(&map.map)?, *n, flags)?;
            let r = dyn_degree_estimate(&seq)?;
            let text = format!(
                "class {}\nlambda [{}, {}]\nroot [{}, {}]\ndegrees {:?}",
                r.growth_class,
                r.lambda_estimate.lower,
                r.lambda_estimate.upper,
                r.root.lower,
                r.root.upper,
                r.evidence.degrees
            );
            Ok(Outcome::new(text, &r))
        }
        Command::Corpus { dir } => corpus::run_corpus(dir),
    }
}

fn sequence(m: &CremonaMap, n: u32, flags: &Flags) -> Result<cremona::dynamics::DegreeSequence, CliError> {
    let method = if flags.modular { DegreeMethod::Modular } else { DegreeMethod::Exact };
    Ok(degree_sequence_with(m, n, method, flags.seed, flags.primes)?)
}

//! Degree sequences of iterates and the growth of `deg(φ^n)`.
//!
//! The modular method follows the restriction of `φ^n` to a random line
//! modulo a prime: if `v` parametrizes `φ^(n-1)` on the line, then
//! `φ(v)` divided by the gcd of its three coordinates parametrizes `φ^n`,
//! and its degree is `deg(φ^n)` for a generic line.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::arith::modp::{self, deg, UniP};
use crate::arith::ntt::NttField;
use crate::error::{Error, Result};
use crate::map::CremonaMap;
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMethod {
    Exact,
    Modular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub map: String,
    /// `(n, deg φ^n)` for `n = 1..=N`.
    pub entries: Vec<(u32, u64)>,
    pub method: DegreeMethod,
    pub primes: Vec<u64>,
    /// Indices `n` where the two primes disagreed and the exact degree
    /// was used.
    pub exact_fallbacks: Vec<u32>,
}

impl DegreeSequence {
    pub fn degrees(&self) -> Vec<u64> {
        self.entries.iter().map(|(_, d)| *d).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,deg\n");
        for (n, d) in &self.entries {
            s.push_str(&format!("{n},{d}\n"));
        }
        s
    }
}

/// `deg φ^n` for `n = 1..=N`; the modular method uses two primes.
pub fn degree_sequence(phi: &CremonaMap, n: u32, method: DegreeMethod, seed: u64) -> Result<DegreeSequence> {
    degree_sequence_with(phi, n, method, seed, 2)
}

/// As [`degree_sequence`], with `nprimes >= 2` independent primes for the
/// modular method; every entry must agree across all of them.
pub fn degree_sequence_with(
    phi: &CremonaMap,
    n: u32,
    method: DegreeMethod,
    seed: u64,
    nprimes: usize,
) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::Precondition("need at least one iterate".into()));
    }
    match method {
        DegreeMethod::Exact => {
            let degs = exact_degrees(phi, n)?;
            finish(phi, degs, method, Vec::new(), Vec::new())
        }
        DegreeMethod::Modular => {
            if nprimes < 2 {
                return Err(Error::TooFewEntries { need: 2, got: nprimes });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut fields: Vec<NttField> = Vec::with_capacity(nprimes);
            while fields.len() < nprimes {
                let f = NttField::random(&mut rng);
                if fields.iter().all(|g| g.modulus() != f.modulus()) {
                    fields.push(f);
                }
            }
            modular_with(phi, n, &fields, &mut rng)
        }
    }
}

/// The modular method with caller-chosen primes, which must be of the
/// form `c 2^32 + 1` below `2^62`.
pub fn degree_sequence_with_primes(phi: &CremonaMap, n: u32, primes: &[u64], seed: u64) -> Result<DegreeSequence> {
    if primes.len() < 2 {
        return Err(Error::TooFewEntries { need: 2, got: primes.len() });
    }
    let fields: Vec<NttField> = primes
        .iter()
        .map(|&p| {
            NttField::new(p).ok_or_else(|| Error::Precondition(format!("{p} is not a prime c*2^32+1 below 2^62")))
        })
        .collect::<Result<_>>()?;
    modular_with(phi, n, &fields, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn modular_with(phi: &CremonaMap, n: u32, fields: &[NttField], rng: &mut ChaCha8Rng) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::Precondition("need at least one iterate".into()));
    }
    if fields.iter().enumerate().any(|(i, f)| fields[..i].iter().any(|g| g.modulus() == f.modulus())) {
        return Err(Error::Precondition("primes must be distinct".into()));
    }
    let seeds: Vec<u64> = fields.iter().map(|_| rng.gen()).collect();
    let runs: Vec<Option<Vec<u64>>> = std::thread::scope(|s| {
        let handles: Vec<_> = fields
            .iter()
            .zip(&seeds)
            .map(|(f, &seed)| s.spawn(move || modular_degrees(phi, n, f, &mut ChaCha8Rng::seed_from_u64(seed))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("prime run panicked")).collect()
    });
    let mut exact: Option<Vec<u64>> = None;
    let mut degs = Vec::with_capacity(n as usize);
    let mut fallbacks = Vec::new();
    for k in 0..n as usize {
        let vals: Vec<Option<u64>> = runs.iter().map(|r| r.as_ref().map(|v| v[k])).collect();
        match vals[0] {
            Some(a) if vals.iter().all(|v| *v == Some(a)) => degs.push(a),
            _ => {
                if exact.as_ref().is_none_or(|e| e.len() <= k) {
                    exact = Some(exact_degrees(phi, k as u32 + 1)?);
                }
                degs.push(exact.as_ref().unwrap()[k]);
                fallbacks.push(k as u32 + 1);
            }
        }
    }
    let primes = fields.iter().map(NttField::modulus).collect();
    finish(phi, degs, DegreeMethod::Modular, primes, fallbacks)
}

fn finish(
    phi: &CremonaMap,
    degs: Vec<u64>,
    method: DegreeMethod,
    primes: Vec<u64>,
    exact_fallbacks: Vec<u32>,
) -> Result<DegreeSequence> {
    for i in 0..degs.len() {
        for j in 0..degs.len() - i {
            let k = i + j + 1;
            if k < degs.len() && degs[k] > degs[i] * degs[j] {
                return Err(Error::Inconsistent(format!(
                    "deg phi^{} = {} exceeds deg phi^{} * deg phi^{} = {}",
                    k + 1,
                    degs[k],
                    i + 1,
                    j + 1,
                    degs[i] * degs[j]
                )));
            }
        }
    }
    Ok(DegreeSequence {
        map: phi.to_string(),
        entries: degs.into_iter().enumerate().map(|(i, d)| (i as u32 + 1, d)).collect(),
        method,
        primes,
        exact_fallbacks,
    })
}

fn exact_degrees(phi: &CremonaMap, n: u32) -> Result<Vec<u64>> {
    let mut cur = phi.clone();
    let mut out = vec![phi.degree() as u64];
    for k in 2..=n {
        cur = cur.compose(phi).map_err(|e| Error::DegenerateComposition(format!("at n = {k}: {e}")))?;
        out.push(cur.degree() as u64);
    }
    Ok(out)
}

/// Degrees of the iterates modulo one prime, or `None` when the prime or
/// the line is unsuitable.
fn modular_degrees<R: Rng>(phi: &CremonaMap, n: u32, f: &NttField, rng: &mut R) -> Option<Vec<u64>> {
    let p = f.modulus();
    let comps: Vec<Vec<([u32; 3], u64)>> = phi.components().iter().map(|c| c.to_modp(p)).collect::<Option<_>>()?;
    if comps.iter().any(|c| c.iter().all(|(_, v)| *v == 0)) {
        return None;
    }
    let d = phi.degree() as usize;
    let lifted: Vec<Vec<([u32; 3], u64)>> =
        comps.iter().map(|c| c.iter().map(|&(e, v)| (e, f.lift(v))).collect()).collect();
    let mut v: [UniP; 3] = [0, 1, 2].map(|_| {
        let mut l = vec![rng.gen_range(0..p), rng.gen_range(0..p)];
        modp::trim(&mut l);
        l
    });
    let mut nominal = 1usize;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let top = d * nominal;
        let len = (top + 1).next_power_of_two();
        let fv: Vec<Vec<u64>> = v.iter().map(|c| f.forward(c, len)).collect();
        let mut acc: [Vec<u64>; 3] = [0, 1, 2].map(|_| vec![0u64; len]);
        let one = f.lift(1);
        let mut pw = vec![vec![0u64; d + 1]; 3];
        for i in 0..len {
            for (k, row) in pw.iter_mut().enumerate() {
                row[0] = one;
                for e in 1..=d {
                    row[e] = f.mul_point(row[e - 1], fv[k][i]);
                }
            }
            for (j, terms) in lifted.iter().enumerate() {
                let mut s = 0u64;
                for &(e, c) in terms {
                    let m = f.mul_point(pw[0][e[0] as usize], pw[1][e[1] as usize]);
                    let m = f.mul_point(m, f.mul_point(pw[2][e[2] as usize], c));
                    s = modp::add(s, m, p);
                }
                acc[j][i] = s;
            }
        }
        let w: Vec<UniP> = acc.into_iter().map(|a| f.backward(a)).collect();
        if w.iter().all(|c| c.is_empty()) {
            return None;
        }
        let tpow = w.iter().filter_map(|c| deg(c)).map(|k| top - k).min().unwrap();
        let live: Vec<&UniP> = w.iter().filter(|c| !c.is_empty()).collect();
        let mut g = live[0].clone();
        for c in &live[1..] {
            if deg(&g) == Some(0) {
                break;
            }
            g = f.gcd(&g, c);
        }
        let dg = deg(&g).unwrap_or(0);
        nominal = top - dg - tpow;
        for (j, c) in w.into_iter().enumerate() {
            if c.is_empty() {
                v[j] = c;
                continue;
            }
            let (q, r) = f.divrem(&c, &g);
            if !r.is_empty() {
                return None;
            }
            v[j] = q;
        }
        out.push(nominal as u64);
    }
    (out[0] == d as u64).then_some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Bounded,
    Linear,
    Quadratic,
    Exponential,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GrowthClass::Bounded => "bounded",
            GrowthClass::Linear => "linear",
            GrowthClass::Quadratic => "quadratic",
            GrowthClass::Exponential => "exponential",
        };
        f.write_str(s)
    }
}

/// Rational bounds `lower <= x <= upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lower: Rat,
    pub upper: Rat,
}

impl Enclosure {
    fn one() -> Self {
        Enclosure { lower: Rat::one(), upper: Rat::one() }
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lower + &self.upper) / Rat::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}

impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Enclosure", 2)?;
        st.serialize_field("lower", &self.lower.to_string())?;
        st.serialize_field("upper", &self.upper.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEvidence {
    pub degrees: Vec<u64>,
    pub sse_linear: f64,
    pub sse_quadratic: f64,
    pub sse_exponential: f64,
    /// `a0 + a1 n + a2 n^2`.
    pub quadratic_fit: [f64; 3],
    /// `exp(alpha + beta n)`, as `[alpha, beta]`.
    pub exponential_fit: [f64; 2],
    /// `d_N >= 1.1^N`.
    pub above_margin: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    /// 1 unless the class is exponential, in which case the root below.
    pub lambda_estimate: Enclosure,
    /// `d_N^(1/N)`.
    pub root: Enclosure,
    pub growth_class: GrowthClass,
    pub evidence: GrowthEvidence,
}

const ROOT_DIGITS: u32 = 6;

/// Rational enclosure of `d^(1/n)` with about six decimals.
fn root_enclosure(d: u64, n: u32) -> Enclosure {
    let target = Rat::from_integer(BigInt::from(d));
    let scale = 10i64.pow(ROOT_DIGITS);
    let x = (d as f64).ln() / n as f64;
    let approx = (x.exp() * scale as f64).round() as i64;
    let r = |k: i64| Rat::new(BigInt::from(k), BigInt::from(scale));
    let pow = |q: &Rat| num_traits::pow(q.clone(), n as usize);
    // the tightest grid points with lo^n <= d <= hi^n
    let mut lo = approx.max(scale);
    while lo > scale && pow(&r(lo)) > target {
        lo -= 1;
    }
    while pow(&r(lo + 1)) <= target {
        lo += 1;
    }
    let mut hi = approx.max(scale);
    while pow(&r(hi)) < target {
        hi += 1;
    }
    while hi > scale && pow(&r(hi - 1)) >= target {
        hi -= 1;
    }
    Enclosure { lower: r(lo), upper: r(hi) }
}

/// Least-squares polynomial fit of the given degree; returns the
/// coefficients and the residual sum of squares.
fn poly_fit(xs: &[f64], ys: &[f64], degree: usize) -> (Vec<f64>, f64) {
    let k = degree + 1;
    let mut a = vec![vec![0.0; k + 1]; k];
    for (&x, &y) in xs.iter().zip(ys) {
        let pw: Vec<f64> = (0..k).map(|i| x.powi(i as i32)).collect();
        for i in 0..k {
            for j in 0..k {
                a[i][j] += pw[i] * pw[j];
            }
            a[i][k] += pw[i] * y;
        }
    }
    for c in 0..k {
        let piv = (c..k).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, piv);
        for r in 0..k {
            if r != c && a[c][c] != 0.0 {
                let m = a[r][c] / a[c][c];
                for j in c..=k {
                    a[r][j] -= m * a[c][j];
                }
            }
        }
    }
    let coef: Vec<f64> = (0..k).map(|i| if a[i][i] == 0.0 { 0.0 } else { a[i][k] / a[i][i] }).collect();
    let sse = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let fit: f64 = coef.iter().enumerate().map(|(i, c)| c * x.powi(i as i32)).sum();
            (y - fit).powi(2)
        })
        .sum();
    (coef, sse)
}

/// Growth class and dynamical degree estimate from a degree sequence.
pub fn dyn_degree_estimate(seq: &DegreeSequence) -> Result<GrowthReport> {
    let degs = seq.degrees();
    if degs.len() < 6 {
        return Err(Error::TooFewEntries { need: 6, got: degs.len() });
    }
    let n = degs.len();
    let xs: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    let ys: Vec<f64> = degs.iter().map(|&d| d as f64).collect();
    let (_, sse1) = poly_fit(&xs, &ys, 1);
    let (q, sse2) = poly_fit(&xs, &ys, 2);
    let logs: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let (e, _) = poly_fit(&xs, &logs, 1);
    let sse_exp: f64 = xs.iter().zip(&ys).map(|(&x, &y)| (y - (e[0] + e[1] * x).exp()).powi(2)).sum();
    let last = *degs.last().unwrap();
    let above_margin =
        BigInt::from(last) * num_traits::pow(BigInt::from(10), n) >= num_traits::pow(BigInt::from(11), n);
    let first_max = degs[..n / 2].iter().max().unwrap();
    let second_max = degs[n / 2..].iter().max().unwrap();
    let class = if second_max <= first_max {
        GrowthClass::Bounded
    } else if above_margin && sse_exp < sse2 {
        GrowthClass::Exponential
    } else if sse1 > 4.0 * sse2 && q[2] > 0.0 {
        GrowthClass::Quadratic
    } else {
        GrowthClass::Linear
    };
    let root = root_enclosure(last, n as u32);
    let lambda_estimate = if class == GrowthClass::Exponential { root.clone() } else { Enclosure::one() };
    Ok(GrowthReport {
        lambda_estimate,
        root,
        growth_class: class,
        evidence: GrowthEvidence {
            degrees: degs,
            sse_linear: sse1,
            sse_quadratic: sse2,
            sse_exponential: sse_exp,
            quadratic_fit: [q[0], q[1], q[2]],
            exponential_fit: [e[0], e[1]],
            above_margin,
        },
    })
}

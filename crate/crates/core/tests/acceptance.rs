//! Acceptance criteria. Prints one line per criterion and exits nonzero
//! if any fails. Pass criterion numbers as arguments to run a subset.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cremona::classical::{
    bertini_point, bertini_point_via_net, dec_cubic_quadratic, geiser_map, hyperelliptic_model, jh_homogenize, jh_make,
    jh_mul, jh_sigma, jh_to_affine, pencil_ninth_point, CubicWithOrigin, JhElement,
};
use cremona::curve::{
    adjoint, adjoint_stability, affine_fixes, basepoint_theorem_check, coble_check, fixes, halphen_check,
    linear_system, no_nonlinear_map_passes,
};
use cremona::dynamics::{degree_sequence, degree_sequence_with, dyn_degree_estimate, DegreeMethod, GrowthClass};
use cremona::map::homaloidal_check;
use cremona::{CremonaMap, Field, PlaneCurve, QPoint, QPoly, Rat, RatFunc1, UniPoly};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn q(v: i64) -> Rat {
    Rat::from_i64(v)
}

fn pt(a: i64, b: i64, c: i64) -> QPoint {
    QPoint::from_i64(a, b, c)
}

fn vars() -> (QPoly, QPoly, QPoly) {
    (QPoly::x(), QPoly::y(), QPoly::z())
}

fn seven() -> Vec<QPoint> {
    vec![pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1), pt(1, 2, 3), pt(2, -1, 5), pt(-3, 4, 2)]
}

fn eight() -> Vec<QPoint> {
    let mut p = seven();
    p.push(pt(5, 3, -2));
    p
}

fn sorted(mut v: Vec<QPoint>) -> Vec<QPoint> {
    v.sort_by(|a, b| a.coords().cmp(b.coords()));
    v
}

fn fermat_quartic() -> QPoly {
    let (x, y, z) = vars();
    &(&x.pow(4) + &y.pow(4)) + &z.pow(4)
}

fn mordell() -> CubicWithOrigin {
    let (x, y, z) = vars();
    let e = &(&(&y.pow(2) * &z) - &x.pow(3)) - &z.pow(3).scale(&q(17));
    CubicWithOrigin::new(e, pt(0, 1, 0)).unwrap()
}

fn random_point(rng: &mut ChaCha8Rng, r: i64) -> QPoint {
    loop {
        let c = [rng.gen_range(-r..=r), rng.gen_range(-r..=r), rng.gen_range(-r..=r)];
        if c != [0, 0, 0] {
            return pt(c[0], c[1], c[2]);
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize, r: i64) -> UniPoly<Rat> {
    UniPoly::new((0..=deg).map(|_| q(rng.gen_range(-r..=r))).collect())
}

fn std_quadratic() -> Outcome {
    let (x, y, z) = vars();
    let t = CremonaMap::standard_quadratic();
    let (tt, factor) = ok(t.compose_with_factor(&t), "compose")?;
    ensure!(tt.is_identity(), "τ∘τ = {tt:?}");
    ensure!(factor.proj_eq(&(&(&x * &y) * &z)), "cancelled factor {factor}");
    Ok(format!("τ∘τ = id, cancelled {factor}"))
}

fn cs24_group() -> Outcome {
    let (x, y, z) = vars();
    let g1 = ok(CremonaMap::new([&y * &z, &x * &y, -(&x * &z)]), "g1")?;
    let g2 = ok(CremonaMap::new([&(&y * &z) * &(&y - &z), &(&x * &z) * &(&y + &z), &(&x * &y) * &(&y + &z)]), "g2")?;
    let mut elems = vec![CremonaMap::identity()];
    let mut frontier = 0;
    while frontier < elems.len() {
        for g in [&g1, &g2] {
            let h = ok(g.compose(&elems[frontier]), "closure")?;
            if !elems.contains(&h) {
                elems.push(h);
            }
            ensure!(elems.len() <= 64, "group is larger than 64");
        }
        frontier += 1;
    }
    let n = elems.len();
    ensure!(n == 8, "order {n}");
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = ok(elems[i].compose(&elems[j]), "table")?;
            table[i][j] = elems.iter().position(|e| *e == c).ok_or("table not closed")?;
        }
    }
    for i in 0..n {
        for j in 0..n {
            ensure!(table[i][j] == table[j][i], "elements {i} and {j} do not commute");
        }
    }
    let mut orders: Vec<usize> = (0..n)
        .map(|i| {
            let (mut k, mut cur) = (1, i);
            while cur != 0 {
                cur = table[i][cur];
                k += 1;
            }
            k
        })
        .collect();
    orders.sort();
    ensure!(orders == [1, 2, 2, 2, 4, 4, 4, 4], "orders {orders:?}");
    Ok(format!("abelian of order 8, orders {orders:?}"))
}

fn geiser_sextic(g: &CremonaMap) -> Result<PlaneCurve, String> {
    let sextic = ok(g.fixed_curve(), "fixed curve")?.ok_or("no fixed curve")?;
    let nodes = seven().into_iter().map(|p| (p, 2)).collect();
    ok(PlaneCurve::new(sextic, nodes), "sextic with 7 nodes")
}

fn geiser_suite() -> Outcome {
    let g = ok(geiser_map(&seven()), "geiser map")?;
    ensure!(g.degree() == 8, "degree {}", g.degree());
    ensure!(ok(g.compose(&g), "G∘G")?.is_identity(), "G∘G is not the identity");
    let bps = ok(g.rational_base_points(), "base points")?;
    ensure!(bps.iter().all(|b| b.multiplicity == 3), "multiplicities {:?}", bps);
    ensure!(sorted(bps.iter().map(|b| b.point.clone()).collect()) == sorted(seven()), "base points {:?}", bps);
    let mults: Vec<u32> = bps.iter().map(|b| b.multiplicity).collect();
    let h = homaloidal_check(g.degree(), &mults);
    ensure!(h.pass && h.sum == 21 && h.sum_sq == 63, "homaloidal {h:?}");
    let c = geiser_sextic(&g)?;
    ensure!(c.degree() == 6, "fixed curve degree {}", c.degree());
    ensure!(ok(c.genus(), "genus")? == 3, "genus {:?}", c.genus());
    ensure!(fixes(&g, c.form()), "G does not fix the sextic");
    Ok("degree 8, involution, 7 triple base points, (21, 63), nodal sextic of genus 3 fixed".into())
}

fn bertini_suite() -> Outcome {
    let p8 = eight();
    let p9 = ok(pencil_ninth_point(&p8), "ninth point")?;
    ensure!(ok(bertini_point(&p8, &p9), "bertini at p9")? == p9, "p9 is moved");
    let mut rng = ChaCha8Rng::seed_from_u64(0xbe27);
    let mut done = 0;
    while done < 20 {
        let x = random_point(&mut rng, 9);
        let Ok(b) = bertini_point(&p8, &x) else { continue };
        let back = ok(bertini_point(&p8, &b), "second application")?;
        ensure!(back == x, "β(β({x})) = {back}");
        done += 1;
    }
    let x = pt(2, 3, 1);
    let direct = ok(bertini_point(&p8, &x), "fiberwise")?;
    let net = ok(bertini_point_via_net(&p8, &x), "sextic net")?;
    ensure!(direct == net, "fiberwise {direct} vs net {net}");
    Ok(format!("20 involution checks, fixes {p9}, net agrees at {x}"))
}

fn random_h6(rng: &mut ChaCha8Rng) -> UniPoly<Rat> {
    loop {
        let h = random_poly(rng, 6, 4);
        if h.degree() == Some(6) && h.is_squarefree() {
            return h;
        }
    }
}

fn random_jh(rng: &mut ChaCha8Rng, h: &UniPoly<Rat>) -> JhElement {
    loop {
        let degs = [rng.gen_range(0..=2), rng.gen_range(0..=2), rng.gen_range(0..=1)];
        let num1 = random_poly(rng, degs[0], 3);
        let num2 = random_poly(rng, degs[1], 3);
        let den = random_poly(rng, degs[2], 3);
        let (Ok(a1), Ok(a2)) = (RatFunc1::new(num1, den.clone()), RatFunc1::new(num2, den)) else { continue };
        if let Ok(e) = jh_make(h, &a1, &a2) {
            return e;
        }
    }
}

fn dejonquieres_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde70);
    let h_fixed = UniPoly::from_i64s(&[1, 0, 0, 0, 0, 0, 1]);
    let h_random = random_h6(&mut rng);
    for h in [&h_fixed, &h_random] {
        let model = hyperelliptic_model(h);
        let s = ok(jh_sigma(h), "sigma")?;
        ensure!(ok(jh_mul(&s, &s), "σ²")?.is_identity(), "σ² ≠ id for h = {h}");
        ensure!(ok(affine_fixes(&jh_to_affine(&s), &model), "σ fixes")?, "σ does not fix y² - ({h})");
    }
    for i in 0..50 {
        let h = if i % 2 == 0 { &h_fixed } else { &h_random };
        let model = hyperelliptic_model(h);
        let (e1, e2) = (random_jh(&mut rng, h), random_jh(&mut rng, h));
        let prod = ok(jh_mul(&e1, &e2), "product")?;
        let lhs = jh_to_affine(&prod);
        let rhs = ok(jh_to_affine(&e1).compose(&jh_to_affine(&e2)), "affine composition")?;
        ensure!(lhs == rhs, "homomorphism fails for {e1:?}, {e2:?}");
        for e in [&e1, &e2, &prod] {
            ensure!(ok(affine_fixes(&jh_to_affine(e), &model), "fixes")?, "{e:?} does not fix y² - h");
        }
    }
    Ok(format!("50 pairs, h = {h_fixed} and h = {h_random}"))
}

fn adjoint_dims() -> Outcome {
    let (x, y, z) = vars();
    let mut cases: Vec<(&str, PlaneCurve, i64)> = Vec::new();
    cases.push(("smooth quartic", ok(PlaneCurve::smooth(fermat_quartic()), "quartic")?, 2));
    let nodal = &(&(&y.pow(2) * &z.pow(2)) - &(&x.pow(2) * &z.pow(2))) - &(&x.pow(4) + &y.pow(4));
    cases.push(("nodal quartic", ok(PlaneCurve::new(nodal, vec![(pt(0, 0, 1), 2)]), "nodal quartic")?, 1));
    let g = ok(geiser_map(&seven()), "geiser map")?;
    cases.push(("7-nodal sextic", geiser_sextic(&g)?, 2));
    cases.push(("8-triple-point nonic", triple_point_nonic()?, 3));
    let mut dims = Vec::new();
    for (name, c, want) in &cases {
        let g = ok(c.genus(), name)?;
        let d = ok(adjoint(c), name)?.dimension();
        ensure!(d == g - 1 && d == *want, "{name}: genus {g}, dim Adj {d}");
        dims.push(format!("{name} {d}"));
    }
    Ok(dims.join(", "))
}

/// A member of the nonics with triple points at eight points.
fn triple_point_nonic() -> Result<PlaneCurve, String> {
    let conds: Vec<(QPoint, u32)> = eight().into_iter().map(|p| (p, 3)).collect();
    let sys = ok(linear_system(9, &conds), "nonic system")?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    for _ in 0..20 {
        let f = sys.basis.iter().fold(QPoly::zero(), |acc, b| &acc + &b.scale(&q(rng.gen_range(-5..=5))));
        if let Ok(c) = PlaneCurve::new(f, conds.clone()) {
            return Ok(c);
        }
    }
    Err("no member with ordinary triple points".into())
}

fn basepoint_theorem() -> Outcome {
    let c = mordell();
    let d = ok(dec_cubic_quadratic(&c, &pt(-2, 3, 1), &pt(-1, 4, 1), &pt(2, 5, 1)), "dec quadratic")?;
    let cubic = ok(PlaneCurve::smooth(c.curve().clone()), "cubic")?;
    let r = ok(basepoint_theorem_check(&cubic, &d.map, 3), "cubic check")?;
    ensure!(r.pass && r.violations.is_empty(), "violations {:?}", r.violations);
    ensure!(r.entries.len() == 3, "entries {:?}", r.entries);
    let quartic = ok(PlaneCurve::smooth(fermat_quartic()), "quartic")?;
    ensure!(no_nonlinear_map_passes(&quartic), "quartic not excluded");
    let rq = ok(basepoint_theorem_check(&quartic, &CremonaMap::standard_quadratic(), 4), "quartic check")?;
    ensure!(rq.nonlinear_excluded && !rq.pass, "quartic report {rq:?}");
    Ok("Dec quadratic passes with 3 base points, quartic excludes nonlinear maps".into())
}

fn degree_growth() -> Outcome {
    let h = UniPoly::from_i64s(&[1, 0, 0, 0, 0, 0, 1]);
    let a1 = RatFunc1::from_poly(UniPoly::from_i64s(&[1, 1]));
    let a2 = RatFunc1::from_poly(UniPoly::from_i64s(&[-1, 2]));
    let jh = ok(jh_homogenize(&ok(jh_make(&h, &a1, &a2), "J_h element")?), "homogenize")?;
    let seq = ok(degree_sequence(&jh, 10, DegreeMethod::Modular, 1), "J_h sequence")?;
    let d = seq.degrees();
    let d1 = d[0] as i64;
    let c = d.iter().enumerate().map(|(i, &dn)| (dn as i64 + i as i64) / (i as i64 + 1) - d1).max().unwrap().max(0);
    ensure!(c <= d1, "J_h degrees {d:?} need c = {c} > d1");
    let r = ok(dyn_degree_estimate(&seq), "J_h growth")?;
    ensure!(r.growth_class == GrowthClass::Linear, "J_h class {} for {d:?}", r.growth_class);
    ensure!(r.lambda_estimate.lower.is_one() && r.lambda_estimate.upper.is_one(), "J_h lambda {:?}", r.lambda_estimate);

    let cubic = mordell();
    let e1 = ok(dec_cubic_quadratic(&cubic, &pt(-2, 3, 1), &pt(-1, 4, 1), &pt(2, 5, 1)), "first Dec")?;
    let e2 = ok(dec_cubic_quadratic(&cubic, &pt(4, 9, 1), &pt(-2, -3, 1), &pt(-1, -4, 1)), "second Dec")?;
    let pair = ok(e1.map.compose(&e2.map), "pair")?;
    let exact = ok(degree_sequence(&pair, 2, DegreeMethod::Exact, 0), "exact prefix")?.degrees();
    let seq = ok(degree_sequence_with(&pair, 10, DegreeMethod::Modular, 2, 2), "pair sequence")?;
    let e = seq.degrees();
    ensure!(
        seq.primes.len() == 2 && seq.exact_fallbacks.is_empty(),
        "primes {:?}, fallbacks {:?}",
        seq.primes,
        seq.exact_fallbacks
    );
    ensure!(e[..2] == exact[..], "modular {:?} vs exact {exact:?}", &e[..2]);
    ensure!(e.windows(2).all(|w| w[1] > w[0]), "not increasing: {e:?}");
    let r = ok(dyn_degree_estimate(&seq), "pair growth")?;
    ensure!(r.growth_class == GrowthClass::Exponential, "pair class {} for {e:?}", r.growth_class);
    ensure!(r.lambda_estimate.lower > Rat::one(), "pair lambda {:?}", r.lambda_estimate);
    Ok(format!("J_h {d:?} with c = {c}; Dec pair {e:?}, λ ≈ {:.4}", r.lambda_estimate.midpoint_f64()))
}

/// An S3-invariant sextic with nodes on the orbits of (1:2:3) and
/// (c:c:1) and at (1:1:1).
fn symmetric_coble_sextic() -> Result<(i64, PlaneCurve), String> {
    let mut perms: Vec<QPoint> = Vec::new();
    for p in [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]] {
        perms.push(pt(p[0], p[1], p[2]));
    }
    for c in [-1i64, 2, -2, 3, 4, 5, -3] {
        let mut nodes = perms.clone();
        nodes.extend([pt(c, c, 1), pt(c, 1, c), pt(1, c, c), pt(1, 1, 1)]);
        let conds: Vec<(QPoint, u32)> = nodes.iter().map(|p| (p.clone(), 2)).collect();
        let Ok(sys) = linear_system(6, &conds) else { continue };
        if sys.basis.len() != 1 {
            continue;
        }
        if let Ok(curve) = PlaneCurve::new(sys.basis[0].clone(), conds) {
            return Ok((c, curve));
        }
    }
    Err("no irreducible symmetric sextic with ten ordinary nodes".into())
}

fn halphen_coble() -> Outcome {
    let grid: Vec<QPoint> = (0..3).flat_map(|a| (0..3).map(move |b| pt(a, b, 1))).collect();
    let one = ok(halphen_check(&grid, 1), "grid n=1")?.dimension;
    let two = ok(halphen_check(&grid, 2), "grid n=2")?.dimension;
    ensure!(one == 1 && two >= 2, "grid dimensions {one}, {two}");
    let mut rng = ChaCha8Rng::seed_from_u64(0x4a1);
    let random: Vec<QPoint> = (0..9).map(|_| random_point(&mut rng, 20)).collect();
    let r = ok(halphen_check(&random, 2), "random n=2")?.dimension;
    ensure!(r == 0, "random points give dimension {r}");

    let (c, coble) = symmetric_coble_sextic()?;
    ensure!(coble_check(&coble), "symmetric sextic rejected");
    let g = ok(geiser_map(&seven()), "geiser map")?;
    ensure!(!coble_check(&geiser_sextic(&g)?), "7-nodal sextic accepted");
    // a declared node that is not a node never becomes a curve
    let mut bad = coble.singularities().to_vec();
    bad[9] = (pt(7, 1, 1), 2);
    ensure!(PlaneCurve::new(coble.form().clone(), bad).is_err(), "undeclared node accepted");
    Ok(format!("grid dims {one}, {two}; random dim {r}; Coble sextic with c = {c}"))
}

fn stability() -> Outcome {
    let g = ok(geiser_map(&seven()), "geiser map")?;
    let c = geiser_sextic(&g)?;
    ensure!(ok(adjoint_stability(&g, &g, &c), "stability")?, "adjoint system not stable");
    Ok("Geiser involution stabilizes the cubics through the 7 nodes".into())
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        (1, "standard quadratic", secs(1), std_quadratic),
        (2, "group of order 8", secs(30), cs24_group),
        (3, "Geiser suite", secs(300), geiser_suite),
        (4, "Bertini suite", secs(300), bertini_suite),
        (5, "de Jonquieres suite", secs(60), dejonquieres_suite),
        (6, "adjoint dimension", secs(60), adjoint_dims),
        (7, "base-point theorem", secs(60), basepoint_theorem),
        (8, "degree growth", secs(600), degree_growth),
        (9, "Halphen and Coble", secs(60), halphen_coble),
        (10, "adjoint stability", secs(120), stability),
    ];
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} ({took:.1?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name} ({took:.1?}): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

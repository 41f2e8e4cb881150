//! Arithmetic over `Z/pZ` for a runtime word-sized prime `p < 2^62`.
//!
//! Univariate polynomials are dense coefficient vectors, lowest degree
//! first, with no trailing zeros (the zero polynomial is empty). Bivariate
//! polynomials in `(x, y)` are vectors indexed by the power of `x` whose
//! entries are univariate polynomials in `y`.

use std::sync::Mutex;

pub type UniP = Vec<u64>;
pub type BivP = Vec<UniP>;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, b, p);
        }
        b = mul(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow(a, p - 2, p)
}

pub fn from_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_START: u64 = (1 << 62) - 1;

static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The `i`-th prime below 2^62, counting downwards.
pub fn prime(i: usize) -> u64 {
    let mut cache = PRIMES.lock().unwrap();
    while cache.len() <= i {
        let mut c = cache.last().map_or(PRIME_START, |&q| q - 2);
        while !is_prime(c) {
            c -= 2;
        }
        cache.push(c);
    }
    cache[i]
}

/// The first prime at or below `n`.
pub fn prev_prime(mut n: u64) -> u64 {
    if n.is_multiple_of(2) {
        n -= 1;
    }
    while !is_prime(n) {
        n -= 2;
    }
    n
}

// ----------------------------------------------------------------------
// univariate

pub fn trim(a: &mut UniP) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree, with `None` for the zero polynomial.
pub fn deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn uadd(a: &[u64], b: &[u64], p: u64) -> UniP {
    let n = a.len().max(b.len());
    let mut r: UniP = (0..n).map(|i| add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
    trim(&mut r);
    r
}

pub fn usub(a: &[u64], b: &[u64], p: u64) -> UniP {
    let n = a.len().max(b.len());
    let mut r: UniP = (0..n).map(|i| sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
    trim(&mut r);
    r
}

pub fn uscale(a: &[u64], c: u64, p: u64) -> UniP {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&v| mul(v, c, p)).collect()
}

const KARATSUBA_CUTOFF: usize = 48;

fn schoolbook(a: &[u64], b: &[u64], p: u64) -> UniP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    let mut out = vec![0u64; n];
    let pp = p as u128;
    for (k, o) in out.iter_mut().enumerate() {
        let lo = k.saturating_sub(b.len() - 1);
        let hi = k.min(a.len() - 1);
        let mut acc: u128 = 0;
        let mut cnt = 0;
        for i in lo..=hi {
            acc += a[i] as u128 * b[k - i] as u128;
            cnt += 1;
            if cnt == 8 {
                acc %= pp;
                cnt = 0;
            }
        }
        *o = (acc % pp) as u64;
    }
    out
}

fn add_into(dst: &mut [u64], src: &[u64], p: u64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = add(*d, *s, p);
    }
}

fn sub_into(dst: &mut [u64], src: &[u64], p: u64) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = sub(*d, *s, p);
    }
}

fn karatsuba(a: &[u64], b: &[u64], p: u64) -> UniP {
    if a.len() < KARATSUBA_CUTOFF || b.len() < KARATSUBA_CUTOFF {
        return schoolbook(a, b, p);
    }
    let m = a.len().max(b.len()) / 2;
    if a.len() <= m || b.len() <= m {
        // unbalanced: split the longer operand only
        let (long, short) = if a.len() > b.len() { (a, b) } else { (b, a) };
        let mut out = vec![0u64; a.len() + b.len() - 1];
        let mut off = 0;
        while off < long.len() {
            let end = (off + short.len()).min(long.len());
            let part = karatsuba(&long[off..end], short, p);
            add_into(&mut out[off..], &part, p);
            off = end;
        }
        return out;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(a0, b0, p);
    let z2 = karatsuba(a1, b1, p);
    let sa = {
        let mut s = a0.to_vec();
        s.resize(m.max(a1.len()), 0);
        add_into(&mut s, a1, p);
        s
    };
    let sb = {
        let mut s = b0.to_vec();
        s.resize(m.max(b1.len()), 0);
        add_into(&mut s, b1, p);
        s
    };
    let mut z1 = karatsuba(&sa, &sb, p);
    sub_into(&mut z1, &z0, p);
    sub_into(&mut z1, &z2, p);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    add_into(&mut out, &z0, p);
    add_into(&mut out[m..], &z1, p);
    add_into(&mut out[2 * m..], &z2, p);
    out
}

pub fn umul(a: &[u64], b: &[u64], p: u64) -> UniP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = karatsuba(a, b, p);
    trim(&mut r);
    r
}

/// Quotient and remainder; `b` must be nonzero.
pub fn udivrem(a: &[u64], b: &[u64], p: u64) -> (UniP, UniP) {
    let db = deg(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lc_inv = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul(r[i + db], lc_inv, p);
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = sub(r[i + j], mul(c, bj, p), p);
            }
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn urem(a: &[u64], b: &[u64], p: u64) -> UniP {
    udivrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> UniP {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => uscale(a, inv(lc, p), p),
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn ugcd(a: &[u64], b: &[u64], p: u64) -> UniP {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = urem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn ueval(a: &[u64], t: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add(mul(acc, t, p), c, p))
}

pub fn uderiv(a: &[u64], p: u64) -> UniP {
    let mut r: UniP = a.iter().enumerate().skip(1).map(|(i, &c)| mul(c, i as u64 % p, p)).collect();
    trim(&mut r);
    r
}

/// `base^e mod m`.
pub fn upowmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> UniP {
    let mut result: UniP = urem(&[1], m, p);
    let mut b = urem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = urem(&umul(&result, &b, p), m, p);
        }
        b = urem(&umul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Distinct roots in `Z/pZ` of a nonzero polynomial.
pub fn uroots(f: &[u64], p: u64) -> Vec<u64> {
    let f = monic(f, p);
    if f.len() <= 1 {
        return Vec::new();
    }
    let xp = upowmod(&[0, 1], p, &f, p);
    let g = ugcd(&f, &usub(&xp, &[0, 1], p), p);
    let mut roots = Vec::new();
    split_linear(&g, p, 1, &mut roots);
    roots.sort_unstable();
    roots
}

/// Degrees of the irreducible factors of a squarefree polynomial, by
/// distinct-degree factorization.
pub fn factor_degrees(f: &[u64], p: u64) -> Vec<usize> {
    let mut f = monic(f, p);
    let mut out = Vec::new();
    let mut xq: UniP = vec![0, 1];
    let mut i = 1;
    while deg(&f).unwrap_or(0) >= 2 * i {
        xq = upowmod(&xq, p, &f, p);
        let g = ugcd(&f, &usub(&xq, &[0, 1], p), p);
        let dg = deg(&g).unwrap_or(0);
        if dg > 0 {
            out.extend(std::iter::repeat_n(i, dg / i));
            f = monic(&udivrem(&f, &g, p).0, p);
            xq = urem(&xq, &f, p);
        }
        i += 1;
    }
    if let Some(d) = deg(&f).filter(|&d| d > 0) {
        out.push(d);
    }
    out
}

fn split_linear(g: &[u64], p: u64, mut shift: u64, out: &mut Vec<u64>) {
    match deg(g) {
        None | Some(0) => {}
        Some(1) => out.push(sub(0, mul(g[0], inv(g[1], p), p), p)),
        Some(d) => loop {
            let h = upowmod(&[shift % p, 1], (p - 1) / 2, g, p);
            let h = ugcd(g, &usub(&h, &[1], p), p);
            shift += 1;
            let dh = deg(&h).unwrap_or(0);
            if dh > 0 && dh < d {
                let (q, _) = udivrem(g, &h, p);
                split_linear(&h, p, shift, out);
                split_linear(&monic(&q, p), p, shift, out);
                return;
            }
        },
    }
}

// ----------------------------------------------------------------------
// bivariate

fn btrim(a: &mut BivP) {
    for c in a.iter_mut() {
        trim(c);
    }
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
}

fn bdeg_y(a: &BivP) -> usize {
    a.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0)
}

fn beval_y(a: &BivP, t: u64, p: u64) -> UniP {
    let mut r: UniP = a.iter().map(|c| ueval(c, t, p)).collect();
    trim(&mut r);
    r
}

fn bcontent(a: &BivP, p: u64) -> UniP {
    let mut g: UniP = Vec::new();
    for c in a {
        g = ugcd(&g, c, p);
        if g.len() == 1 {
            break;
        }
    }
    g
}

fn bdiv_by_uni(a: &BivP, c: &[u64], p: u64) -> BivP {
    a.iter().map(|ai| udivrem(ai, c, p).0).collect()
}

/// Exact division in `F_p[x, y]` using lex order with `x > y`. Returns
/// `None` when `h` does not divide `a`.
pub fn bdiv_exact(a: &BivP, h: &BivP, p: u64) -> Option<BivP> {
    let mut r = a.clone();
    btrim(&mut r);
    let mut h = h.clone();
    btrim(&mut h);
    let hdx = h.len().checked_sub(1)?;
    let hlc = &h[hdx];
    let hly = hlc.len() - 1;
    let lc_inv = inv(hlc[hly], p);
    if r.is_empty() {
        return Some(Vec::new());
    }
    let mut q: BivP = vec![Vec::new(); r.len().saturating_sub(hdx).max(1)];
    loop {
        while r.last().is_some_and(|c| c.is_empty()) {
            r.pop();
        }
        let Some(i) = r.len().checked_sub(1) else {
            break;
        };
        let j = r[i].len() - 1;
        if i < hdx || j < hly {
            return None;
        }
        let c = mul(r[i][j], lc_inv, p);
        let (qi, qj) = (i - hdx, j - hly);
        if q[qi].len() <= qj {
            q[qi].resize(qj + 1, 0);
        }
        q[qi][qj] = add(q[qi][qj], c, p);
        for (hi, hc) in h.iter().enumerate() {
            let row = &mut r[qi + hi];
            if row.len() < qj + hc.len() && hc.iter().any(|&v| v != 0) {
                row.resize(qj + hc.len(), 0);
            }
            for (hj, &v) in hc.iter().enumerate() {
                if v != 0 {
                    row[qj + hj] = sub(row[qj + hj], mul(c, v, p), p);
                }
            }
            trim(row);
        }
    }
    btrim(&mut q);
    Some(q)
}

/// gcd in `F_p[x, y]` by dense evaluation and interpolation in `y`
/// (Brown's algorithm), normalized by the caller.
pub fn bgcd(a: &BivP, b: &BivP, p: u64) -> BivP {
    let mut a = a.clone();
    let mut b = b.clone();
    btrim(&mut a);
    btrim(&mut b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let ca = bcontent(&a, p);
    let cb = bcontent(&b, p);
    let c = ugcd(&ca, &cb, p);
    let a = bdiv_by_uni(&a, &ca, p);
    let b = bdiv_by_uni(&b, &cb, p);
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let lca = a.last().unwrap();
    let lcb = b.last().unwrap();
    let gamma = ugcd(lca, lcb, p);
    let bound = bdeg_y(&a).min(bdeg_y(&b)) + deg(&gamma).unwrap_or(0);

    let mut cur_deg = usize::MAX;
    let mut interp: BivP = Vec::new();
    let mut modulus: UniP = vec![1];
    let mut npts = 0usize;
    let mut t: u64 = 0;
    let mut restarts = 0;
    loop {
        t += 1;
        if t >= p {
            panic!("ran out of evaluation points mod {p}");
        }
        let gt = ueval(&gamma, t, p);
        if gt == 0 || ueval(lca, t, p) == 0 || ueval(lcb, t, p) == 0 {
            continue;
        }
        let ua = beval_y(&a, t, p);
        let ub = beval_y(&b, t, p);
        let u = ugcd(&ua, &ub, p);
        let du = deg(&u).unwrap_or(0);
        if du == 0 {
            return vec![c];
        }
        if du > cur_deg {
            continue;
        }
        if du < cur_deg {
            cur_deg = du;
            interp = vec![Vec::new(); du + 1];
            modulus = vec![1];
            npts = 0;
        }
        let u = uscale(&u, gt, p);
        // Newton step: interp += modulus * (u - interp(t)) / modulus(t)
        let mt_inv = inv(ueval(&modulus, t, p), p);
        for (i, row) in interp.iter_mut().enumerate() {
            let target = *u.get(i).unwrap_or(&0);
            let diff = sub(target, ueval(row, t, p), p);
            if diff != 0 {
                let corr = uscale(&modulus, mul(diff, mt_inv, p), p);
                *row = uadd(row, &corr, p);
            }
        }
        modulus = umul(&modulus, &[sub(0, t, p), 1], p);
        npts += 1;
        if npts > bound {
            let mut cand = interp.clone();
            btrim(&mut cand);
            let cc = bcontent(&cand, p);
            let cand = bdiv_by_uni(&cand, &cc, p);
            if bdiv_exact(&a, &cand, p).is_some() && bdiv_exact(&b, &cand, p).is_some() {
                return cand.iter().map(|row| umul(row, &c, p)).collect();
            }
            restarts += 1;
            assert!(restarts < 64, "modular gcd failed to converge");
            cur_deg = usize::MAX;
        }
    }
}

/// A sparse homogeneous trivariate polynomial over `F_p`: exponent
/// triples and nonzero coefficients.
pub type HomTerms = Vec<([u32; 3], u64)>;

/// gcd of homogeneous trivariate polynomials over `F_p`, made monic with
/// respect to graded-lex order. Returns terms sorted in descending order.
pub fn hom_gcd(a: &HomTerms, b: &HomTerms, p: u64) -> HomTerms {
    if a.is_empty() {
        return monic_terms(b.clone(), p);
    }
    if b.is_empty() {
        return monic_terms(a.clone(), p);
    }
    let za = a.iter().map(|(e, _)| e[2]).min().unwrap();
    let zb = b.iter().map(|(e, _)| e[2]).min().unwrap();
    let zmin = za.min(zb);
    let ba = to_biv(a);
    let bb = to_biv(b);
    let g = bgcd(&ba, &bb, p);
    let mut terms: HomTerms = Vec::new();
    let total = g
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, &v)| v != 0).map(move |(j, _)| i + j))
        .max()
        .unwrap_or(0) as u32;
    for (i, row) in g.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v != 0 {
                let (i, j) = (i as u32, j as u32);
                terms.push(([i, j, total - i - j + zmin], v));
            }
        }
    }
    monic_terms(terms, p)
}

fn to_biv(a: &HomTerms) -> BivP {
    let dx = a.iter().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
    let mut out: BivP = vec![Vec::new(); dx + 1];
    for (e, v) in a {
        let row = &mut out[e[0] as usize];
        let j = e[1] as usize;
        if row.len() <= j {
            row.resize(j + 1, 0);
        }
        row[j] = *v;
    }
    btrim(&mut out);
    out
}

fn monic_terms(mut t: HomTerms, p: u64) -> HomTerms {
    t.sort_by(|x, y| y.0.cmp(&x.0));
    if let Some(&(_, lc)) = t.first() {
        let li = inv(lc, p);
        for (_, v) in t.iter_mut() {
            *v = mul(*v, li, p);
        }
    }
    t
}

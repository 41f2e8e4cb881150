//! Membership of a map in the decomposition and inertia groups of a curve.

use crate::map::CremonaMap;
use crate::QPoly;

/// If `F ∘ φ = F · E`, the cofactor `E`, of degree `n (d - 1)`.
pub fn preserves(phi: &CremonaMap, f: &QPoly) -> Option<QPoly> {
    if phi.is_identity() {
        return Some(QPoly::one());
    }
    let g = f.substitute(phi.components()).expect("equal degrees");
    g.exact_div(f).ok()
}

/// True iff `F` divides the three minors of `[x y z; f0 f1 f2]`, that is
/// `φ` restricts to the identity on the curve.
pub fn fixes(phi: &CremonaMap, f: &QPoly) -> bool {
    phi.is_identity() || phi.fixed_minors().iter().all(|m| f.divides(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_and_lines() {
        let (x, y, z) = (QPoly::x(), QPoly::y(), QPoly::z());
        let t = CremonaMap::standard_quadratic();
        let l = &(&x + &y) + &z;
        assert_eq!(preserves(&t, &l), None);
        assert!(!fixes(&t, &l));
        assert_eq!(preserves(&CremonaMap::identity(), &l), Some(QPoly::one()));
        // the reflection in z fixes z = 0 pointwise and preserves x = 0
        let refl = CremonaMap::new([x.clone(), y.clone(), -z.clone()]).unwrap();
        assert!(fixes(&refl, &z));
        assert!(!fixes(&refl, &x));
        assert!(preserves(&refl, &x).is_some());
        // tau swaps the line l and the conic c, so it preserves their union
        let c = &(&(&x * &y) + &(&y * &z)) + &(&x * &z);
        let e = preserves(&t, &(&c * &l));
        assert!(e.is_some());
        assert_eq!(e.unwrap().degree(), 3);
    }
}

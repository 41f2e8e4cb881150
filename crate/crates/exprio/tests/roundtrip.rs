use num_bigint::BigInt;
use proptest::prelude::*;

use cremona::{QPoint, QPoly, Rat, RatFunc1, UniPoly};
use cremona_exprio::{
    format_point, format_poly, format_ratfunc, parse_map, parse_point, parse_poly, parse_poly_raw, parse_ratfunc,
};

fn rat() -> impl Strategy<Value = Rat> {
    (-10_000i64..10_000, 1i64..50).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn form() -> impl Strategy<Value = QPoly> {
    (0u32..6).prop_flat_map(form_of)
}

fn form_of(d: u32) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(((0..=d), (0..=d), rat()), 1..8).prop_filter_map("zero form", move |terms| {
        let t: Vec<([u32; 3], Rat)> = terms
            .into_iter()
            .map(|(i, j, c)| {
                let j = j.min(d - i);
                ([i, j, d - i - j], c)
            })
            .collect();
        QPoly::from_terms(t).ok().filter(|p| !p.is_zero())
    })
}

fn upoly() -> impl Strategy<Value = UniPoly<Rat>> {
    prop::collection::vec(rat(), 1..6).prop_map(UniPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_forms_read_back(p in form()) {
        let text = format_poly(&p);
        prop_assert_eq!(parse_poly_raw(&text).unwrap(), p.clone());
        prop_assert_eq!(parse_poly(&text).unwrap(), p.canonical());
    }
}

proptest! {
    #[test]
    fn maps_read_back((a, b, c) in (1u32..5).prop_flat_map(|d| (form_of(d), form_of(d), form_of(d)))) {
        let text = format!("{}; {}; {}", a, b, c);
        let m = parse_map(&text).unwrap();
        prop_assert_eq!(m, [a, b, c]);
    }

    #[test]
    fn rational_functions_read_back(n in upoly(), d in upoly()) {
        prop_assume!(!d.is_zero());
        let f = RatFunc1::new(n, d).unwrap();
        prop_assert_eq!(parse_ratfunc(&format_ratfunc(&f)).unwrap(), f);
    }

    #[test]
    fn points_read_back(x in rat(), y in rat(), z in rat()) {
        prop_assume!(QPoint::new(x.clone(), y.clone(), z.clone()).is_ok());
        let p = QPoint::new(x, y, z).unwrap();
        prop_assert_eq!(parse_point(&format_point(&p)).unwrap(), p);
    }

    #[test]
    fn error_spans_lie_inside_the_input(s in "[xyzw0-9+*/^() ;,-]{0,40}") {
        for e in [parse_poly(&s).err(), parse_map(&s).err(), parse_ratfunc(&s).err()].into_iter().flatten() {
            prop_assert!(e.span.start <= e.span.end && e.span.end <= s.len(), "{:?} in {:?}", e.span, s);
            let _ = e.render(&s);
        }
    }
}

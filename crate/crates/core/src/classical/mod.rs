//! Classical Cremona transformations: de Jonquières elements over a
//! hyperelliptic curve, quadratic maps preserving a cubic, and the Geiser
//! and Bertini involutions.

mod cubic;
mod jh;
mod pencil;

pub use cubic::{
    cubic_add, cubic_neg, cubic_third, dec_cubic_quadratic, is_smooth_cubic, CubicWithOrigin, DecQuadratic,
};
pub use jh::{
    extend_hyperelliptic_auto, hyperelliptic_model, jh_fixes_curve, jh_homogenize, jh_identity, jh_inv, jh_make,
    jh_mul, jh_sigma, jh_to_affine, JhElement,
};
pub use pencil::{bertini_point, bertini_point_via_net, geiser_map, geiser_point, pencil_ninth_point};

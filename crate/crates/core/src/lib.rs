//! Exact stability conditions, stable sets and maximal green sequences for
//! string modules over quivers of type `A_n`, affine type `Ã_{a,b}` and the
//! oriented cycle with nilpotent relations.
//!
//! Every quantity is computed in exact rational (or exact integer) arithmetic.
//! Floating point only enters when drawing SVG output.
//!
//! ```
//! use greenseq::{mgs, parse_quiver, CentralCharge, q};
//!
//! let quiver = parse_quiver("A:-+").unwrap();
//! let z = CentralCharge::new(vec![q(1, 2), q(3, 2), q(-2, 1)], vec![q(1, 1); 3]).unwrap();
//! let seq = mgs(&quiver, &z).unwrap();
//! let names: Vec<String> = seq.modules().iter().map(|m| m.to_string()).collect();
//! assert_eq!(names, ["M(2,3)", "M(1,3)", "M(0,1)", "M(0,2)", "M(1,2)"]);
//! ```

pub mod charge;
pub mod collapse;
pub mod error;
mod lattice;
pub mod linearity;
pub mod maxsets;
pub mod quiver;
pub mod rational;
pub mod render;
pub mod stability;
pub mod verify;

pub use charge::{lift_pair, make_charge, CentralCharge};
pub use collapse::{collapse, project_charge, project_module, project_set, ProjectionMap};
pub use error::{Error, NonGenericReason, Result};
pub use linearity::{
    dn_charge, is_linear_set, is_strictly_convex, reineke_charge, witness_linear, witness_spliced, Condition,
    LinearityVerdict,
};
pub use maxsets::{
    build_sk, build_skl, class_count, enumerate_max_sets, max_mgs_length, valid_pairs, ClassifiedMaxSet,
    MaxSetDescriptor,
};
pub use quiver::{parse_quiver, Quiver, QuiverKind, Sign, SignFunction, StringModule};
pub use rational::{q, Rational};
pub use render::{render, render_chord_svg, render_wire_svg, write_svg, Mode, RenderSpec, Source, Style};
pub use stability::{
    classify, classify_all, green_point, in_wall, is_semistable_chord, is_semistable_oracle, is_semistable_wire,
    is_stable_chord, is_stable_oracle, is_stable_wire, mgs, semistable_set, slope_order, spliced_mgs,
    spliced_semistable_set, spliced_stable_set, stable_set, ChargeView, Criterion, GreenEntry, GreenSequence,
    SplicedPath, Stability, WallMembership,
};
pub use verify::{verify_equivalence, VerifyReport};

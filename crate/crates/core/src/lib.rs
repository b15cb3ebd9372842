//! Instanton bundles on the blow-up of P³ at a point and on the flag threefold.

pub mod chern;
pub mod chow;
pub mod cohomology;
pub mod error;
pub mod instanton;
pub mod monad;
pub mod scalar;
pub mod selfcheck;
pub mod serre;
pub mod stability;

pub use chern::{euler_characteristic, rr_blowup, ChernData};
pub use chow::{CurveClass, DivisorClass, Geometry, GeometryDescriptor, GradedClass};
pub use cohomology::{h_line_f, h_line_flag, h_omega_f, h_sheaf, HVector, SheafTerm};
pub use error::{Error, Result};
pub use instanton::{cohomology_table, validate_invariants, CohomologyTable, InstantonInvariants};
pub use monad::{monad_chern, synthesize_monad_f, synthesize_monad_flag, MonadTerms};
pub use scalar::{Rational, Scalar};
pub use serre::{construct_instanton, CurveConfig};

pub type Divisor = DivisorClass<i64>;
pub type Curve = CurveClass<i64>;
pub type Chern = ChernData<i64>;

pub type BigDivisor = DivisorClass<num_bigint::BigInt>;
pub type BigCurve = CurveClass<num_bigint::BigInt>;
pub type BigChern = ChernData<num_bigint::BigInt>;

//! Finite categories, their nerves and coverings, zeta functions, and series
//! and filtered Euler characteristics, all in exact arithmetic.
//!
//! ```
//! use catcover_core::{builders, check_covering, series_euler_characteristic, verify_zeta_power};
//!
//! let bundle = builders::gamma_covering();
//! let cert = check_covering(bundle.functor().unwrap()).unwrap();
//! assert_eq!(cert.sheets(), 2);
//! assert!(verify_zeta_power(&cert, 8).passed());
//! assert_eq!(series_euler_characteristic(&bundle.total).unwrap().to_string(), "1");
//! ```

pub mod builders;
pub mod category;
pub mod covering;
pub mod euler;
pub mod exact;
pub mod filtered;
pub mod functor;
pub mod generate;
pub mod io;
pub mod matrix;
pub mod nerve;
pub mod poly;
pub mod ratfunc;
pub mod recurrence;
pub mod series;
pub mod zeta;

pub use builders::{build_example, BuildError, CoveringBundle, Example, ExampleSpec};
pub use category::{
    validate_category, FiniteCategory, InvalidCategory, MorphismId, MorphismSets, ObjectId, RawCategory, Violation,
};
pub use covering::{
    check_covering, fiber, fiber_transport, verify_nerve_factorization, CoveringCertificate, CoveringError,
    FactorizationReport, FiberTransport,
};
pub use euler::{
    euler_rational_function, groupoid_euler, series_euler_characteristic, verify_chi_product, ChiProductReport,
    EulerError,
};
pub use filtered::{
    chi_fil, detect_rational, f_chi_coefficients, validate_filtration, verify_fil_product, ChiCoefficients, ChiFil,
    ChiFilValue, FilProductReport, FilteredCategory, FilteredError, Filtration, LevelCategory, LevelFunctor,
};
pub use functor::{validate_functor, CatFunctor, FunctorViolation, InvalidFunctor, RawFunctor};
pub use nerve::{
    adjacency_matrix, enumerate_nerve, nerve_count, nerve_count_targeted, nerve_counts, AdjacencyMatrix, Chain,
    NerveCount, NerveEnumeration, Variant,
};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use series::PowerSeries;
pub use zeta::{
    chi_from_closed_form, log_derivative, verify_zeta_power, zeta_closed_form, zeta_series, ZetaClosedForm,
    ZetaError, ZetaPole, ZetaPowerReport,
};

pub use num::{BigInt, BigRational, BigUint};

//! Finite pointed posets with validation, suprema, way-below and
//! compactness, products, exponentials via monotone-map enumeration, and
//! Kleene least fixed points.

pub mod fixtures;
pub mod maps;
pub mod poset;
pub mod text;

pub use maps::{
    enumerate_monotone_maps, enumerate_monotone_tables, lfp, product, ExpError, Exponential,
    LfpResult, MapError, MonoMap, Product,
};
pub use poset::{FinPoset, PosetError, PosetViolation, Subset, WAY_BELOW_CAP};
pub use text::{parse_monomap, parse_poset, render_poset, TextError};

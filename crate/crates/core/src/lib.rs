pub mod error;
pub mod group;
pub mod chain;
pub mod metric;
pub mod linalg;
pub mod hochschild;
pub mod bar;
pub mod homotopy;
pub mod norms;
pub mod lp;
pub mod dehn;
pub mod filling;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
pub use group::{parse_group, GroupElement, GroupKind, GroupModel};
pub use metric::{ConjugacyClassId, CosetSection, WordMetric};
pub use chain::{Chain, ChainKind, GroupChain, Q};
pub use hochschild::{HochschildComplex, Localization};
pub use linalg::RankReport;

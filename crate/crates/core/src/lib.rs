pub mod cache;
pub mod cells;
pub mod chars;
pub mod coxeter;
pub mod deduce;
pub mod dl;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod partition;

pub use cells::{CellKind, Cells};
pub use chars::{CharacterTableSn, HeckeCharTable, RationalFunction, SnCharacters};
pub use coxeter::{CoxeterType, Elem, GroupDatum, GroupTable, Twist};
pub use dl::{AlmostCharVector, Basis, DlContext, Form, Mode, UnipotentCombo};
pub use error::{Error, Result};
pub use hecke::{GroupRingElt, HeckeAlgebra, HeckeElt, Side};
pub use kl::KlTable;
pub use laurent::{JsonInt, LaurentPoly};
pub use partition::Partition;

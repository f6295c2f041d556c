//! The bigraded form algebra of the punctured disk.

pub mod coefficient;
pub mod form;
pub mod space;
pub mod wedge;

pub use coefficient::LocalizedCoefficient;
pub use form::{mb_form, Form, WeightVector};
pub use space::{basis, valid_dimension, RawSpace, SpaceKey, ValidSpace};
pub use wedge::WedgeKey;

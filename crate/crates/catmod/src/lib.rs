pub mod bounds;
pub mod category;
pub mod certify;
pub mod central;
pub mod cmodule;
pub mod ctx;
pub mod error;
pub mod groups;
pub mod guide;
pub mod linalg;
pub mod tensor_bounds;

pub use ctx::Ctx;
pub use error::{Error, Result};

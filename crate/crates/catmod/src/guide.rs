//! The guide in `book/src`, compiled into the docs so its examples run as
//! doctests. One module per chapter keeps a failing example traceable.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}
#[doc = include_str!("../../../book/src/categories.md")]
pub mod categories {}
#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/central.md")]
pub mod central {}
#[doc = include_str!("../../../book/src/tensors.md")]
pub mod tensors {}
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

//! The guide's chapters, compiled so their examples run as doctests.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/free_groups.md")]
pub mod free_groups {}
#[doc = include_str!("../../../book/src/presentations.md")]
pub mod presentations {}
#[doc = include_str!("../../../book/src/fox.md")]
pub mod fox {}
#[doc = include_str!("../../../book/src/laurent.md")]
pub mod laurent {}
#[doc = include_str!("../../../book/src/representations.md")]
pub mod representations {}
#[doc = include_str!("../../../book/src/wada.md")]
pub mod wada {}
#[doc = include_str!("../../../book/src/splittings.md")]
pub mod splittings {}
#[doc = include_str!("../../../book/src/knots.md")]
pub mod knots {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

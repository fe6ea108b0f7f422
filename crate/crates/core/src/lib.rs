pub mod albert;
pub mod clifford;
pub mod composition;
pub mod error;
pub mod freudenthal;
pub mod groups;
pub mod harness;
pub mod matrix;
pub mod report;
pub mod ring;
pub mod root_data;
pub mod weyl;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/root-data.md")]
    mod root_data {}
    #[doc = include_str!("../../../book/src/albert.md")]
    mod albert {}
    #[doc = include_str!("../../../book/src/freudenthal.md")]
    mod freudenthal {}
    #[doc = include_str!("../../../book/src/clifford.md")]
    mod clifford {}
    #[doc = include_str!("../../../book/src/realizations.md")]
    mod realizations {}
    #[doc = include_str!("../../../book/src/weyl.md")]
    mod weyl {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}

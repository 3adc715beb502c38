// The book's Rust snippets are compiled and run here, one module per chapter,
// so a failing doctest names the chapter it came from.

#[cfg(doctest)]
mod chapters {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/newton.md")]
    mod newton {}
    #[doc = include_str!("../../../book/src/j-multiplicity.md")]
    mod j_multiplicity {}
    #[doc = include_str!("../../../book/src/epsilon.md")]
    mod epsilon {}
    #[doc = include_str!("../../../book/src/toric.md")]
    mod toric {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

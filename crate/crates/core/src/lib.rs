pub mod checkers;
pub mod cli;
pub mod coverage;
pub mod frontend;
pub mod report;
pub mod sema;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/corpus.md")]
mod book_corpus {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/coverage.md")]
mod book_coverage {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/dataflow.md")]
mod book_dataflow {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/deviations.md")]
mod book_deviations {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/json.md")]
mod book_json {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/pipeline.md")]
mod book_pipeline {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/profiles.md")]
mod book_profiles {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/bans.md")]
mod book_rules_bans {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/ctype.md")]
mod book_rules_ctype {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/env.md")]
mod book_rules_env {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/eof.md")]
mod book_rules_eof {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/errno.md")]
mod book_rules_errno {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/extdata.md")]
mod book_rules_extdata {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/index.md")]
mod book_rules_index {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/memcmp.md")]
mod book_rules_memcmp {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/sizeof.md")]
mod book_rules_sizeof {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rules/string.md")]
mod book_rules_string {}

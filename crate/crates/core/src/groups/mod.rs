//! Free-group words, finite presentations, knot and link ingestion,
//! abelianization and Reidemeister-Schreier rewriting.

mod abelian;
mod braid;
mod pd;
mod presentation;
mod schreier;
mod word;

pub use abelian::{abelianization, Abelianization, EpiToG, FinAbGroup};
pub use braid::presentation_from_braid;
pub use pd::wirtinger_from_pd;
pub use presentation::Presentation;
pub use schreier::{reidemeister_schreier, SubgroupData};
pub use word::{parse_word, Letter, Word};

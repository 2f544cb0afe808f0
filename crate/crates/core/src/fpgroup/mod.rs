//! Finitely presented groups: words, presentations, coset enumeration,
//! low-index subgroups and Reidemeister–Schreier.

mod coset;
mod enumerate;
mod lowindex;
mod presentation;
mod reidemeister;
mod word;

pub use coset::CosetTable;
pub use enumerate::coset_enumerate;
pub use lowindex::{
    low_index_subgroups, low_index_subgroups_with_budget, LowIndexSearch, SearchSeed, SubgroupRecord,
    DEFAULT_NODE_BUDGET,
};
pub use presentation::Presentation;
pub use reidemeister::{default_names, reidemeister_schreier, SubgroupPresentation};
pub use word::{Letter, Word};

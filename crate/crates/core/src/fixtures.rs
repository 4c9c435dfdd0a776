//! Bundled data fixtures: relative class-group p-rank tables for the four
//! twist families, with the published root-number and rank columns for
//! regression comparison.

/// Class-group p-rank rows, CSV with header `family,parameter,p,h,grh`.
pub const ED_H_CSV: &str = include_str!("../data/ed_h.csv");
pub const EA_H_CSV: &str = include_str!("../data/ea_h.csv");
pub const CN_H_CSV: &str = include_str!("../data/cn_h.csv");
pub const CS_H_CSV: &str = include_str!("../data/cs_h.csv");

/// Expected root-number and rank columns, CSV with header
/// `family,parameter,omega,rank,rank_grh`.
pub const ED_EXPECTED_CSV: &str = include_str!("../data/ed_expected.csv");
pub const EA_EXPECTED_CSV: &str = include_str!("../data/ea_expected.csv");
pub const CN_EXPECTED_CSV: &str = include_str!("../data/cn_expected.csv");
pub const CS_EXPECTED_CSV: &str = include_str!("../data/cs_expected.csv");

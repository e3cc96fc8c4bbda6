//! Isoperimetric constants `ι_n`, `ι̃_n` and their functional counterpart.

mod classify;
mod constant;
mod families;
mod functional;

pub use classify::{
    complete_graph_iota, complete_graph_iota_without_mean, proposition_s_holds, proposition_t_holds,
    random_disjoint_family, structural_inequalities_check, supergeometric_classify, StructuralReport,
    SupergeometricReport,
};
pub use constant::{
    classical_cheeger, family_objective, isoperimetric_constant, isoperimetric_report, minimize, report_from_table,
    CheegerVersion, IsoperimetricReport, IsoperimetricValue, RatioTable, DEFAULT_CAP, HARD_CAP,
};
pub use families::{enumerate_families, Families, Mode, SubsetFamily};
pub use functional::{coarea_sums, gamma_objective, level_set_rounding, level_set_rounding_in, random_family, PositiveOrthonormalFamily};

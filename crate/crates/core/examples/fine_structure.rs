//! From a rank table over a biquadratic field to the characteristic ideal of
//! the dual fine Mordell-Weil group.

use std::collections::BTreeMap;

use iwasawa_mw::group::{FiniteAbelianGroup, IndexTuple};
use iwasawa_mw::rank_data::{growth_summary, solve_e_alpha, synthesize_rank_table, EAlphaTable};
use iwasawa_mw::structure::{equivariant_fine, fine_mw_structure};

fn main() {
    let p = 5;
    let g = FiniteAbelianGroup::new([(2, 1), (3, 1)]).unwrap();
    let t = |s: &str| s.parse::<IndexTuple>().unwrap();

    // Prescribe multiplicities, build the rank table they imply, then recover them.
    let mut rows = BTreeMap::new();
    rows.insert(t("0,0"), vec![1, 2, 0]);
    rows.insert(t("0,1"), vec![0, 1, 0]);
    rows.insert(t("1,0"), vec![0, 0, 3]);
    rows.insert(t("1,1"), vec![0, 0, 0]);
    let ea = EAlphaTable::new(&g, rows).unwrap();
    let table = synthesize_rank_table(&g, p, &ea);
    for (a, r) in table.rows() {
        println!("rank of E over the fixed field of G_{a}: {r:?}");
    }

    let solved = solve_e_alpha(&g, p, &table).unwrap();
    assert_eq!(solved, ea);
    let gs = growth_summary(&g, &solved).unwrap();
    println!("e = {:?}, theta = {:?}, s = {:?}", gs.e, gs.theta, gs.s);

    let fine = fine_mw_structure(p, &gs);
    println!("char ideal: {} (lambda = {})", fine.ideal, fine.ideal.lambda());
    for s in equivariant_fine(&solved).summands {
        println!("  (W{} (x) Lambda/Phi({}))^{}", s.tuple, s.level, s.multiplicity);
    }
}

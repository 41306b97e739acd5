//! Equivariant decompositions and their contractions to the plain exponents.

use std::collections::BTreeMap;

use iwasawa_mw::cyclotomic::Sign;
use iwasawa_mw::group::FiniteAbelianGroup;
use iwasawa_mw::rank_data::{growth_summary, EAlphaTable};
use iwasawa_mw::structure::{equivariant_fine, equivariant_pm, signed_exponent};

fn main() {
    let g = FiniteAbelianGroup::new([(5, 1)]).unwrap();
    let mut rows = BTreeMap::new();
    rows.insert("0".parse().unwrap(), vec![2, 1, 2]);
    rows.insert("1".parse().unwrap(), vec![0, 2, 1]);
    let ea = EAlphaTable::new(&g, rows).unwrap();
    let gs = growth_summary(&g, &ea).unwrap();

    let fine = equivariant_fine(&ea);
    for n in 0..gs.levels() {
        println!("level {n}: fine contraction {} = e_n - theta_n = {}", fine.contraction(&g, n), gs.s[n]);
    }
    for sign in [Sign::Plus, Sign::Minus] {
        let d = equivariant_pm(&ea, sign);
        let c: Vec<u64> = (0..gs.levels()).map(|n| d.contraction(&g, n)).collect();
        let r: Vec<u64> = (0..gs.levels()).map(|n| signed_exponent(&gs, n, sign)).collect();
        println!("{sign}: contraction {c:?}, r_n = {r:?}");
        assert_eq!(c, r);
    }
}

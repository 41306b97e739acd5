//! Accepting and rejecting candidate Selmer shapes.

use iwasawa_mw::rank_data::GrowthSummary;
use iwasawa_mw::selmer::{validate_selmer_shape, SelmerShape, ShapeReduction};

fn show(s: &SelmerShape, gs: Option<&GrowthSummary>) {
    let r = validate_selmer_shape(s, gs).unwrap();
    println!("{} {:?}: {}", r.reduction, s.cyclo_multi, if r.accepted { "accepted" } else { "rejected" });
    for c in r.failed() {
        println!("  {}: {}", c.name, c.detail);
    }
    if r.accepted {
        println!("  Sha cyclotomic part {:?}, cyclic: {}", r.sha.cyclotomic, r.cyclic);
    }
}

fn main() {
    let shape = |reduction, multi: &[(u32, u32)], simple: &[u32]| SelmerShape {
        reduction,
        generic: Vec::new(),
        cyclo_multi: multi.to_vec(),
        cyclo_simple: simple.to_vec(),
    };
    show(&shape(ShapeReduction::Ordinary, &[(1, 2), (1, 3)], &[]), None);
    show(&shape(ShapeReduction::Plus, &[(3, 2)], &[]), None);
    show(&shape(ShapeReduction::Ordinary, &[(1, 2), (2, 3)], &[4]), None);

    let gs = GrowthSummary::for_rationals(vec![0, 1, 2]);
    show(&shape(ShapeReduction::Ordinary, &[(2, 2)], &[1, 2]), Some(&gs));
    show(&shape(ShapeReduction::Ordinary, &[(2, 2)], &[1]), Some(&gs));
}

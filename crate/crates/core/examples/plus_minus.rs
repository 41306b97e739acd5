//! Plus and minus characteristic ideals at a supersingular prime over `Q`.

use iwasawa_mw::hypotheses::{reduction_type, ReductionType};
use iwasawa_mw::rank_data::GrowthSummary;
use iwasawa_mw::structure::{kp_rhs, pm_gcd_closed_form, pm_mw_structure};

fn main() {
    let p = 3;
    let reduction = reduction_type(0, p).unwrap();
    assert_eq!(reduction, ReductionType::Supersingular);

    let gs = GrowthSummary::for_rationals(vec![1, 2, 0, 3]);
    let pm = pm_mw_structure(p, &gs, reduction).unwrap();
    println!("r+ = {:?}", pm.r_plus);
    println!("r- = {:?}", pm.r_minus);
    println!("char+ = {}", pm.char_plus);
    println!("char- = {}", pm.char_minus);
    println!("gcd   = {}", pm.gcd);
    assert_eq!(pm.gcd, pm_gcd_closed_form(p, &gs));
    assert_eq!(pm.gcd, kp_rhs(p, &gs.e));

    match pm_mw_structure(p, &gs, reduction_type(1, p).unwrap()) {
        Err(e) => println!("ordinary prime: {e}"),
        Ok(_) => unreachable!(),
    }
}

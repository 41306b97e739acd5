//! Condition (star) and the conductor conditions for a few abelian fields.

use iwasawa_mw::group::FiniteAbelianGroup;
use iwasawa_mw::hypotheses::{FieldDescriptor, HypothesisReport};

fn main() {
    let fields = [
        (vec![(2, 1)], 5, 3),
        (vec![(5, 1)], 11, 3),
        (vec![(5, 1)], 11, 19),
        (vec![(3, 1)], 9, 3),
        (vec![(2, 1), (3, 1)], 63, 5),
    ];
    for (factors, conductor, p) in fields {
        let k = FieldDescriptor::new(FiniteAbelianGroup::new(factors).unwrap(), conductor).unwrap();
        let r = HypothesisReport::new(&k, p, Some(0)).unwrap();
        println!(
            "G = {}, f = {conductor}, p = {p}: fine {}, plus/minus {}, failing {:?}",
            k.group(),
            r.fine_ok(),
            r.pm_ok(),
            r.failures()
        );
    }
}

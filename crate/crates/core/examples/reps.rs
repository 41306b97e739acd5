//! Rational irreducible representations of `Z/2 x Z/3^2` and the dimensions
//! of their fixed spaces, checked against the group algebra.

use iwasawa_mw::group::FiniteAbelianGroup;
use iwasawa_mw::oracle::GroupAlgebraModel;

fn main() {
    let g = FiniteAbelianGroup::new([(2, 1), (3, 2)]).unwrap();
    println!("G = {g}, |G| = {}", g.order());
    for w in g.irreps() {
        println!("W{} has dimension {}", w.tuple, w.dimension);
    }

    let model = GroupAlgebraModel::new(&g).unwrap();
    let tuples = g.index_tuples();
    for b in &tuples {
        let row: Vec<String> = tuples
            .iter()
            .map(|a| {
                let d = g.fixed_subspace_dim(b, a).unwrap();
                assert_eq!(d, model.fixed_subspace_dim(b, a).unwrap());
                d.to_string()
            })
            .collect();
        println!("dim W{b}^(G_a) for each a: {}", row.join(" "));
    }

    let repeated = FiniteAbelianGroup::with_repeated_primes([(3, 1), (3, 1)]).unwrap();
    let report = GroupAlgebraModel::new(&repeated).unwrap().decompose();
    for c in report.reducible() {
        let w = c.witness.as_ref().unwrap();
        println!(
            "{repeated}: W{} (dim {}) is reducible; element {:?} fixes a subspace of dim {}",
            c.tuple, c.oracle_dimension, w.element, w.fixed_dimension
        );
    }
}

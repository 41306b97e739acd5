//! Cyclotomic factors in the Iwasawa variable and Bezout certificates
//! `A * omega~^+ + B * omega~^- = p^m`.

use iwasawa_mw::cyclotomic::{bezout_p_power, omega_poly, phi_poly};
use iwasawa_mw::poly::IntPoly;

fn main() {
    let p = 3;
    let mut product = IntPoly::one();
    for n in 0..=3 {
        let phi = phi_poly(p, n);
        product = &product * &phi;
        assert_eq!(product, omega_poly(p, n));
        if n <= 2 {
            println!("Phi_{n} = {phi}");
        }
    }

    for n in 1..=4 {
        let c = bezout_p_power(p, n);
        assert!(c.verify());
        println!("n = {n}: p^{} with deg A = {:?}, deg B = {:?}", c.m, c.a.degree(), c.b.degree());
    }
    let c = bezout_p_power(p, 1);
    println!("n = 1: A = {}, B = {}", c.a, c.b);
}

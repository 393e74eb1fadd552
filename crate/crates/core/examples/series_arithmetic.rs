//! Truncated power series: products, reciprocals and derivatives.
//!
//! `cargo run --example series_arithmetic`

use univalent::series::TruncatedSeries;
use univalent::{Complex64, Result};

fn show(label: &str, s: &TruncatedSeries, upto: usize) {
    let terms: Vec<String> = s.coeffs()[..=upto].iter().map(|c| format!("{:.3}", c.re)).collect();
    println!("{label:<24} [{}, ...]", terms.join(", "));
}

fn main() -> Result<()> {
    let order = 12;
    let square = TruncatedSeries::from_real(&[1.0, -2.0, 1.0], order);
    let koebe_tail = square.recip()?;
    show("1 / (1 - z)^2", &koebe_tail, 8);
    show("(1 - z)^2 * that", &square.mul(&koebe_tail)?, 8);

    let k = koebe_tail.shift_up(1);
    show("k(z) = z / (1 - z)^2", &k, 8);
    show("k'(z)", &k.deriv(), 8);

    let geometric = TruncatedSeries::from_real(&[1.0, -1.0], 30).recip()?;
    let at_half = geometric.eval(Complex64::new(0.5, 0.0));
    println!("sum_(k<=30) 2^-k          = {:.12} (closed form {:.12})", at_half.re, 2.0 - 0.5f64.powi(30));
    Ok(())
}

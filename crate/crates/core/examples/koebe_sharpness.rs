//! The rotated Koebe functions attain all six sharp constants.
//!
//! `cargo run --example koebe_sharpness`

use univalent::classu::ClassUFunction;
use univalent::functionals::PROVEN_SPECS;
use univalent::{Result, DEFAULT_ORDER};

fn main() -> Result<()> {
    let thetas = [0.0, 0.7, std::f64::consts::PI];
    print!("{:<8}{:>8}", "spec", "bound");
    for t in thetas {
        print!("{:>16}", format!("theta = {t:.3}"));
    }
    println!();
    for spec in PROVEN_SPECS {
        print!("{:<8}{:>8}", spec.to_string(), spec.bound());
        for t in thetas {
            let value = spec.evaluate(&ClassUFunction::koebe(t, DEFAULT_ORDER))?;
            print!("{value:>16.12}");
        }
        println!();
    }
    let k = ClassUFunction::koebe(std::f64::consts::FRAC_PI_2, DEFAULT_ORDER);
    println!("theta = pi/2: a2..a5 = {:.3}, {:.3}, {:.3}, {:.3}", k.a(2), k.a(3), k.a(4), k.a(5));
    Ok(())
}

//! Fit GLD to the exact moments of the D1 model and show the iteration trace.
//!
//! Run with `cargo run --example gld_binary`.

use hetlda::data::d1_population;
use hetlda::gld::{train_gld, GldConfig};

fn main() -> hetlda::Result<()> {
    let (s1, s2, priors) = d1_population();
    let fit = train_gld(&s1, &s2, &priors, &GldConfig::default())?;

    println!("iter  p_e        |grad|");
    for (i, it) in fit.trace.iterates.iter().enumerate() {
        println!("{i:>4}  {:.7}  {:.3e}", it.p_e, it.grad_norm);
    }
    println!(
        "stopped by {:?}; best iterate {} with p_e {:.7}",
        fit.trace.converged_by, fit.trace.best_index, fit.p_e
    );
    println!("w0 = {:.5}", fit.disc.w0);
    let w: Vec<String> = fit.disc.w.iter().map(|v| format!("{v:.3e}")).collect();
    println!("w  = [{}]", w.join(", "));
    Ok(())
}

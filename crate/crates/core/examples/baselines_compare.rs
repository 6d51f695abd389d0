//! Compare LDA, the blend sweeps and GLD on both synthetic models, using
//! their population moments so the numbers are free of sampling noise.

use hetlda::baselines::{train_chld, train_lda, train_rhld1, train_rhld2, SweepConfig};
use hetlda::data::{d1_population, d2_population};
use hetlda::gld::{train_gld, GldConfig};

fn main() -> hetlda::Result<()> {
    let sweep = SweepConfig::default();
    for (name, (s1, s2, priors)) in [("D1", d1_population()), ("D2", d2_population())] {
        println!("{name}");
        println!("  lda     {:.5}", train_lda(&s1, &s2, &priors)?.p_e);
        let c = train_chld(&s1, &s2, &priors, &sweep)?;
        println!("  chld    {:.5}  (s = {:.3})", c.p_e, c.best_s);
        let r1 = train_rhld1(&s1, &s2, &priors, &sweep)?;
        println!("  rhld1   {:.5}  (s = {:.3})", r1.p_e, r1.best_s);
        let r2 = train_rhld2(&s1, &s2, &priors, &sweep)?;
        println!(
            "  rhld2   {:.5}  (s1 = {:.3}, s2 = {:.3})",
            r2.p_e, r2.best_s1, r2.best_s2
        );
        println!("  gld     {:.5}", train_gld(&s1, &s2, &priors, &GldConfig::default())?.p_e);
    }
    Ok(())
}

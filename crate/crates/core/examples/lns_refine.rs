//! Polish a GLD discriminant by local search on its training mistakes.

use hetlda::data::generate_d2;
use hetlda::discriminant::{compute_class_stats, training_error_count};
use hetlda::gld::{train_gld, GldConfig};
use hetlda::lns::{local_neighbourhood_search, LnsConfig};

fn main() -> hetlda::Result<()> {
    let data = generate_d2(7);
    let (s1, s2, priors) = compute_class_stats(&data, 0, 1)?;
    let gld = train_gld(&s1, &s2, &priors, &GldConfig::default())?;
    let before = training_error_count(&gld.disc, &data, 0, 1)?;

    let cfg = LnsConfig {
        seed: 7,
        ..LnsConfig::default()
    };
    let refined = local_neighbourhood_search(&gld.disc, &data, 0, 1, &cfg)?;
    println!("training errors: {before} -> {} of {}", refined.error_count, data.n());
    println!("sweeps run: {}", refined.history.len());
    Ok(())
}

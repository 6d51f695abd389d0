//! Three Gaussian blobs classified by one-vs-one voting over GLD pairs.

use hetlda::data::accuracy;
use hetlda::multiclass::predict_all;
use hetlda::{train_ovo, LabeledDataset, Method};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn blobs(seed: u64, per_class: usize) -> LabeledDataset {
    let centres = [(0.0, 0.0), (4.0, 0.5), (1.5, 4.0)];
    let spreads = [1.0, 0.6, 1.4];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (c, (&(x, y), &sd)) in centres.iter().zip(&spreads).enumerate() {
        let noise = Normal::new(0.0, sd).unwrap();
        for _ in 0..per_class {
            rows.push(vec![x + noise.sample(&mut rng), y + noise.sample(&mut rng)]);
            labels.push(c);
        }
    }
    let names = ["red", "green", "blue"].map(String::from).to_vec();
    LabeledDataset::new(rows, labels, Some(names)).unwrap()
}

fn main() -> hetlda::Result<()> {
    let train = blobs(1, 150);
    let test = blobs(2, 150);
    let model = train_ovo(&train, &"gld".parse::<Method>()?)?;

    for p in &model.pairs {
        println!(
            "{:>5} vs {:<5} p_e {:.4}",
            model.class_names[p.class_a], model.class_names[p.class_b], p.p_e
        );
    }
    let pred = predict_all(&model, &test)?;
    println!("test accuracy {:.4}", accuracy(&pred, test.labels()));
    Ok(())
}

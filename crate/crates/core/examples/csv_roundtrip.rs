//! Write a dataset to CSV, read it back, train, save the model and reload it.

use hetlda::data::{generate_d2, load_csv, write_csv};
use hetlda::model::{sha256_hex, ModelFile};
use hetlda::multiclass::predict_all;
use hetlda::{train_ovo, Method};

fn main() -> hetlda::Result<()> {
    let dir = std::env::temp_dir().join("hetlda-csv-roundtrip");
    std::fs::create_dir_all(&dir)?;
    let csv_path = dir.join("d2.csv");
    let model_path = dir.join("model.json");

    write_csv(&generate_d2(3), std::fs::File::create(&csv_path)?, true)?;
    let data = load_csv(&csv_path, true, 4)?;
    println!("loaded {} rows, {} features, {} classes", data.n(), data.d(), data.k());

    let method: Method = "lda".parse()?;
    let model = train_ovo(&data, &method)?;
    let digest = sha256_hex(&std::fs::read(&csv_path)?);
    ModelFile::new(&model, &method, Some(digest), 0).save(&model_path)?;

    let reloaded = ModelFile::load(&model_path)?.to_model()?;
    let same = predict_all(&model, &data)? == predict_all(&reloaded, &data)?;
    println!("model written to {}", model_path.display());
    println!("reloaded model agrees on every row: {same}");
    Ok(())
}

use hetlda::data::{kfold_split, CvPlan};
use hetlda::discriminant::{
    discriminant_bayes_error, training_error_count, ClassStats, LinearDiscriminant, Priors,
    ProjectedStats,
};
use hetlda::gld::{second_order_holds, threshold_roots};
use hetlda::lns::{local_neighbourhood_search, LnsConfig};
use hetlda::model::ModelFile;
use hetlda::multiclass::{predict_ovo, OvoModel, PairClassifier};
use hetlda::numkit::{q_function, Matrix, Vector};
use hetlda::{LabeledDataset, Method};
use proptest::prelude::*;

fn dataset(max_n: usize, d: usize, k: usize) -> impl Strategy<Value = LabeledDataset> {
    prop::collection::vec((prop::collection::vec(-5.0..5.0f64, d), 0..k), 2 * k..max_n)
        .prop_map(move |pts| {
            let (rows, mut labels): (Vec<_>, Vec<_>) = pts.into_iter().unzip();
            // Every class present at least twice.
            for (i, l) in labels.iter_mut().take(2 * k).enumerate() {
                *l = i % k;
            }
            LabeledDataset::new(rows, labels, None).unwrap()
        })
}

proptest! {
    #[test]
    fn q_is_a_tail_probability(z in -30.0..30.0f64) {
        let (a, b) = (q_function(z), q_function(-z));
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!((a + b - 1.0).abs() < 1e-15);
        prop_assert!(q_function(z + 0.1) <= a);
    }

    #[test]
    fn plus_root_is_a_minimum(
        mu2 in -5.0..5.0f64, gap in 1e-3..5.0f64,
        var1 in 0.05..9.0f64, var2 in 0.05..9.0f64, tau in 0.2..5.0f64,
    ) {
        prop_assume!((var1 - var2).abs() > 1e-6);
        if let Ok((plus, minus)) = threshold_roots(mu2 + gap, mu2, var1, var2, tau) {
            let at = |w0| ProjectedStats::new(mu2 + gap, mu2, var1, var2, w0).unwrap();
            prop_assert!(second_order_holds(&at(plus)));
            prop_assert!(!second_order_holds(&at(minus)));
        }
    }

    #[test]
    fn bayes_error_ignores_positive_scale(
        w in prop::collection::vec(-2.0..2.0f64, 3), w0 in -1.0..1.0f64,
        pi1 in 0.1..0.9f64, exp in -20i32..20,
    ) {
        prop_assume!(w.iter().any(|v| v.abs() > 1e-3));
        let s1 = ClassStats::new(
            Vector::from_vec(vec![1.0, 0.0, 0.5]), Matrix::identity(3, 3), 10, pi1,
        ).unwrap();
        let s2 = ClassStats::new(
            Vector::from_vec(vec![0.0, 1.0, -0.5]), Matrix::identity(3, 3) * 2.0, 10, 1.0 - pi1,
        ).unwrap();
        let priors = Priors::new(pi1).unwrap();
        let disc = LinearDiscriminant::new(Vector::from_vec(w), w0);
        let a = discriminant_bayes_error(&disc, &s1, &s2, &priors).unwrap();
        let b = discriminant_bayes_error(&disc.scaled(2f64.powi(exp)), &s1, &s2, &priors).unwrap();
        prop_assert!((a - b).abs() <= 1e-14);
    }

    #[test]
    fn folds_partition_every_trial(data in dataset(60, 2, 3), folds in 2usize..5, seed in 0u64..100) {
        let counts = data.class_counts();
        prop_assume!(counts.iter().all(|&c| c >= folds));
        let plan = CvPlan { folds, trials: 2, seed, ..CvPlan::default() };
        for trial in kfold_split(&data, &plan).unwrap() {
            let mut seen = vec![0; data.n()];
            for fold in &trial {
                prop_assert_eq!(fold.train.len() + fold.test.len(), data.n());
                for &i in &fold.test {
                    seen[i] += 1;
                }
            }
            prop_assert!(seen.iter().all(|&s| s == 1));
        }
    }

    #[test]
    fn local_search_never_hurts(data in dataset(40, 2, 2), w in prop::collection::vec(-1.0..1.0f64, 2), w0 in -1.0..1.0f64) {
        let init = LinearDiscriminant::new(Vector::from_vec(w), w0);
        let start = training_error_count(&init, &data, 0, 1).unwrap();
        let cfg = LnsConfig { max_iters: 50, early_stop: 10, ..LnsConfig::default() };
        let r = local_neighbourhood_search(&init, &data, 0, 1, &cfg).unwrap();
        prop_assert!(r.error_count <= start);
        prop_assert!(r.history.windows(2).all(|h| h[1] <= h[0]));
        prop_assert_eq!(training_error_count(&r.disc, &data, 0, 1).unwrap(), r.error_count);
    }

    #[test]
    fn model_json_round_trip(
        params in prop::collection::vec((prop::collection::vec(-1e3..1e3f64, 2), -1e3..1e3f64, 0.0..=1.0f64), 6),
        x in prop::collection::vec(-10.0..10.0f64, 2),
    ) {
        let pairs = hetlda::multiclass::class_pairs(4)
            .into_iter()
            .zip(params)
            .map(|((a, b), (w, w0, p_e))| PairClassifier {
                class_a: a,
                class_b: b,
                disc: LinearDiscriminant::new(Vector::from_vec(w), w0),
                p_e,
                bayes_error: p_e,
            })
            .collect();
        let model = OvoModel {
            k: 4,
            class_names: ["a", "b", "c", "d"].map(String::from).to_vec(),
            pairs,
        };
        let file = ModelFile::new(&model, &Method::Lda, None, 0);
        let back = ModelFile::from_json(&file.to_json().unwrap()).unwrap().to_model().unwrap();
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(predict_ovo(&back, &x).unwrap(), predict_ovo(&model, &x).unwrap());
    }
}

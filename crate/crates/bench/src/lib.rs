//! Shared input generators for the criterion benches. Inputs are seeded
//! so successive runs measure the same workload.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reprospect_core::corpus::{BadgeSet, PaperRecord};

const WORDS: [&str; 24] = [
    "artifact", "pipeline", "estimator", "corpus", "replication", "badge", "verification",
    "experiment", "dataset", "protocol", "baseline", "variance", "measurement", "archive",
    "container", "notebook", "procedure", "evaluation", "checklist", "repository", "metric",
    "sampling", "convergence", "annotation",
];

/// Paper-shaped full text: abstract, numbered sections with equation and
/// algorithm lines, mentions, and a references tail.
pub fn synthetic_text(seed: u64, paragraphs: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sentence = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(8..22);
        let words: Vec<&str> = (0..len).map(|_| WORDS[rng.gen_range(0..WORDS.len())]).collect();
        let mut s = words.join(" ");
        s[..1].make_ascii_uppercase();
        s.push('.');
        s
    };
    let mut text = String::new();
    for _ in 0..4 {
        text.push_str(&sentence(&mut rng));
        text.push(' ');
    }
    text.push_str("\n\n1 Introduction\n\n");
    for p in 0..paragraphs {
        for _ in 0..rng.gen_range(3..7) {
            text.push_str(&sentence(&mut rng));
            text.push(' ');
        }
        if p % 3 == 0 {
            text.push_str(&format!("\nAlgorithm {} drives the loop.\n", p / 3 + 1));
            text.push_str(&format!("x_{p} = y_{p} + z_{p}   ({p})\n"));
        }
        if p % 5 == 0 {
            text.push_str("The code is at github.com/lab/kit and data at zenodo.org/record/9.\n");
        }
        text.push('\n');
    }
    text.push_str("References\n\n[1] A prior study. [2] Another one.\n");
    text
}

pub fn synthetic_record(seed: u64, paragraphs: usize) -> PaperRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PaperRecord {
        id: format!("bench-{seed}"),
        title: "Benchmark record".into(),
        year: 2021,
        venue: "CONF".into(),
        full_text: synthetic_text(seed, paragraphs),
        badges: BadgeSet {
            available: rng.gen_bool(0.5),
            functional: rng.gen_bool(0.3),
            reusable: rng.gen_bool(0.3),
            reproduced: rng.gen_bool(0.2),
        },
        citations: rng.gen_range(0..3000),
        checklist: rng.gen_bool(0.5),
        mandatory_artifacts: rng.gen_bool(0.2),
        awards: rng.gen_bool(0.1),
        correspondence: rng.gen_bool(0.4),
        funding: rng.gen_bool(0.7),
        supplemental: rng.gen_bool(0.5),
        pwc_github: rng.gen_bool(0.3),
        pwc_datasets: rng.gen_bool(0.2),
        pwc_methods: rng.gen_bool(0.2),
    }
}

/// Token stream with a controllable vocabulary, for the MTLD bench.
pub fn token_stream(seed: u64, len: usize, vocab: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| format!("t{}", rng.gen_range(0..vocab))).collect()
}

/// Standard normal sample via Box-Muller.
pub fn gaussian_sample(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
        })
        .collect()
}

/// Three-class blob data with extra noise features, for the model benches.
pub fn blob_data(seed: u64, n_per_class: usize, noise_dims: usize) -> (Vec<Vec<f64>>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gauss = |rng: &mut ChaCha8Rng| {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    let centers = [(0.0, 0.0), (4.0, 0.0), (0.0, 4.0)];
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (cls, (cx, cy)) in centers.iter().enumerate() {
        for _ in 0..n_per_class {
            let mut row = vec![cx + gauss(&mut rng), cy + gauss(&mut rng)];
            row.extend((0..noise_dims).map(|_| gauss(&mut rng)));
            x.push(row);
            y.push(cls);
        }
    }
    (x, y)
}

//! Property suites for the invariants the library promises: canonical
//! corpus round trips, lossless sectioning, the MTLD definition against a
//! naive oracle, bounded readability, rank-test invariance, and spectrum
//! monotonicity.

use proptest::prelude::*;
use reprospect_core::corpus::{
    chunk_mean_embedding, corpus_to_string, parse_corpus, segment_sections, BadgeSet, PaperRecord,
};
use reprospect_core::spectrum::{author_label, external_label, AuthorLabel, ExternalLabel};
use reprospect_core::stats::kruskal_wallis;
use reprospect_core::textfeat::{
    compute_text_stats, lowercase_tokens, median_readability, mtld, readability_scores,
    MTLD_CAP, MTLD_THRESHOLD,
};

fn arb_badges() -> impl Strategy<Value = BadgeSet> {
    (any::<bool>(), any::<bool>(), any::<bool>(), any::<bool>()).prop_map(
        |(available, functional, reusable, reproduced)| BadgeSet {
            available,
            functional,
            reusable,
            reproduced,
        },
    )
}

fn arb_record(i: usize) -> impl Strategy<Value = PaperRecord> {
    (
        "[a-zA-Z0-9 _\"\\\\{}:,\\n\u{e9}\u{4e16}]{0,40}",
        "[a-zA-Z0-9 .\\n\"\\\\]{0,200}",
        1970..2030i32,
        arb_badges(),
        any::<u64>(),
        proptest::collection::vec(any::<bool>(), 9),
    )
        .prop_map(move |(title, full_text, year, badges, citations, flags)| PaperRecord {
            id: format!("id-{i}"),
            title,
            year,
            venue: "VENUE'24".to_string(),
            full_text,
            badges,
            citations,
            checklist: flags[0],
            mandatory_artifacts: flags[1],
            awards: flags[2],
            correspondence: flags[3],
            funding: flags[4],
            supplemental: flags[5],
            pwc_github: flags[6],
            pwc_datasets: flags[7],
            pwc_methods: flags[8],
        })
}

fn arb_corpus() -> impl Strategy<Value = Vec<PaperRecord>> {
    proptest::collection::vec(any::<u8>(), 1..6).prop_flat_map(|seeds| {
        seeds
            .into_iter()
            .enumerate()
            .map(|(i, _)| arb_record(i))
            .collect::<Vec<_>>()
    })
}

/// Straight-from-the-definition MTLD: recompute the type-token ratio from
/// scratch after every token, cut a factor when it drops below the
/// threshold, add the partial factor, run both directions, average.
fn naive_mtld(tokens: &[String], threshold: f64) -> f64 {
    fn one_direction(tokens: Vec<&str>, threshold: f64) -> f64 {
        let n = tokens.len();
        let mut factors = 0.0f64;
        let mut segment: Vec<&str> = Vec::new();
        let mut ttr = 1.0;
        for tok in tokens {
            segment.push(tok);
            let mut distinct: Vec<&str> = Vec::new();
            for t in &segment {
                if !distinct.contains(t) {
                    distinct.push(t);
                }
            }
            ttr = distinct.len() as f64 / segment.len() as f64;
            if ttr < threshold {
                factors += 1.0;
                segment.clear();
                ttr = 1.0;
            }
        }
        if !segment.is_empty() {
            factors += (1.0 - ttr) / (1.0 - threshold);
        }
        if factors == 0.0 {
            return MTLD_CAP;
        }
        (n as f64 / factors).clamp(0.0, MTLD_CAP)
    }
    let forward: Vec<&str> = tokens.iter().map(|s| s.as_str()).collect();
    let backward: Vec<&str> = tokens.iter().rev().map(|s| s.as_str()).collect();
    let value = (one_direction(forward, threshold) + one_direction(backward, threshold)) / 2.0;
    value.clamp(0.0, MTLD_CAP)
}

proptest! {
    #[test]
    fn corpus_canonical_round_trip(records in arb_corpus()) {
        let text = corpus_to_string(&records);
        let parsed = parse_corpus(&text).expect("canonical text parses");
        prop_assert_eq!(&parsed, &records);
        // The writer is a fixpoint: re-serializing changes nothing.
        prop_assert_eq!(corpus_to_string(&parsed), text);
    }

    #[test]
    fn sectioning_is_lossless(text in "[a-zA-Z0-9 .:\\n()=+<>-]{0,400}") {
        let doc = segment_sections(&text);
        prop_assert_eq!(doc.reconstruct(), text);
    }

    #[test]
    fn mtld_matches_naive_oracle(
        tokens in proptest::collection::vec("[a-f]{1,2}", 1..120),
        threshold_step in 1u8..9
    ) {
        let threshold = f64::from(threshold_step) / 10.0;
        let ours = mtld(&tokens, threshold).unwrap();
        let oracle = naive_mtld(&tokens, threshold);
        prop_assert_eq!(ours, oracle);
    }

    #[test]
    fn mtld_default_threshold_in_range(tokens in proptest::collection::vec("[a-z]{1,4}", 1..200)) {
        let v = mtld(&tokens, MTLD_THRESHOLD).unwrap();
        prop_assert!((0.0..=MTLD_CAP).contains(&v));
    }

    #[test]
    fn median_readability_is_bounded(text in ".{0,300}") {
        let stats = compute_text_stats(&text);
        let scores = readability_scores(&stats, &text);
        let m = median_readability(&scores);
        prop_assert!((0.0..=1.0).contains(&m), "median {} for {:?}", m, text);
    }

    #[test]
    fn lowercase_tokens_never_empty_strings(text in ".{0,200}") {
        for tok in lowercase_tokens(&text) {
            prop_assert!(!tok.is_empty());
            prop_assert!(tok.chars().any(|c| c.is_alphanumeric()));
        }
    }

    #[test]
    fn kruskal_wallis_invariant_under_monotone_transforms(
        a in proptest::collection::vec(-50i32..50, 3..12),
        b in proptest::collection::vec(-50i32..50, 3..12),
        c in proptest::collection::vec(-50i32..50, 3..12),
        which in 0u8..4
    ) {
        let to_f = |v: &[i32]| v.iter().map(|&x| x as f64).collect::<Vec<f64>>();
        let (a, b, c) = (to_f(&a), to_f(&b), to_f(&c));
        let pooled_identical = a.iter().chain(&b).chain(&c).all(|&v| v == a[0]);
        prop_assume!(!pooled_identical);

        // Strictly increasing maps; ranks cannot change.
        let f: fn(f64) -> f64 = match which {
            0 => |x| x.exp(),
            1 => |x| x * x * x + x,
            2 => |x| 2.0 * x + 1.0,
            _ => |x| x.atan(),
        };
        let t = |v: &[f64]| v.iter().map(|&x| f(x)).collect::<Vec<f64>>();
        let base = kruskal_wallis(&[&a, &b, &c]).unwrap();
        let warped = kruskal_wallis(&[&t(&a), &t(&b), &t(&c)]).unwrap();
        prop_assert_eq!(base.statistic, warped.statistic);
        prop_assert_eq!(base.p_value, warped.p_value);
    }

    #[test]
    fn chunk_mean_is_permutation_invariant(
        chunks in proptest::collection::vec(
            proptest::collection::vec(-1e6f64..1e6, 3),
            1..12
        ),
        seed in any::<u64>()
    ) {
        let mean = chunk_mean_embedding(&chunks).unwrap();
        let mut shuffled = chunks.clone();
        // Cheap deterministic shuffle driven by the seed.
        let n = shuffled.len();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s as usize) % (i + 1));
        }
        let mean2 = chunk_mean_embedding(&shuffled).unwrap();
        prop_assert_eq!(mean, mean2);
    }

    #[test]
    fn spectrum_monotone_and_consistent(badges in arb_badges()) {
        let author = author_label(&badges);
        let external = external_label(&badges);
        // Adding the top badge never moves the author label left.
        let upgraded = BadgeSet { reusable: true, ..badges };
        prop_assert!(author_label(&upgraded) >= author);
        // Full external reproducibility implies the top author label.
        if external == ExternalLabel::R {
            prop_assert_eq!(author, AuthorLabel::Pax);
        }
        // The floor matches: no badges and no reproduction on both scales.
        prop_assert_eq!(
            external == ExternalLabel::Nr,
            author == AuthorLabel::Pwa && !badges.reproduced
        );
    }
}

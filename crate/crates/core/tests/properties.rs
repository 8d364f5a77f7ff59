use proptest::prelude::*;
use texseg::glcm::{chi_square, contrast, correlation, energy, entropy, local_homogeneity};
use texseg::segmentation::{percentile_threshold, threshold_segment, BLACK, WHITE};
use texseg::{MarginalStats, Probabilities, ScalarMap};

fn table() -> impl Strategy<Value = Probabilities<f64>> {
    (2usize..7).prop_flat_map(|g| {
        prop::collection::vec(0.0f64..1.0, g * g).prop_filter_map("all-zero table", move |w| {
            let s: f64 = w.iter().sum();
            (s > 0.0).then(|| Probabilities::from_table(g, w.iter().map(|v| v / s).collect()).unwrap())
        })
    })
}

fn marginals() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..7).prop_flat_map(|g| {
        (prop::collection::vec(0.01f64..1.0, g), prop::collection::vec(0.01f64..1.0, g)).prop_map(|(a, b)| {
            let (sa, sb): (f64, f64) = (a.iter().sum(), b.iter().sum());
            (a.iter().map(|v| v / sa).collect(), b.iter().map(|v| v / sb).collect())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn chi_square_at_least_one(p in table()) {
        prop_assert!(chi_square(&p) >= 1.0 - 1e-12);
    }

    #[test]
    fn correlation_is_bounded(p in table()) {
        let c = correlation(&p, &MarginalStats::of(&p));
        prop_assert!((-1.0..=1.0).contains(&c), "{}", c);
    }

    #[test]
    fn feature_ranges(p in table()) {
        let g = p.levels() as f64;
        let e = energy(&p);
        prop_assert!(e > 0.0 && e <= 1.0 + 1e-12);
        let h = entropy(&p);
        prop_assert!(h >= 0.0 && h <= (g * g).ln() + 1e-12);
        prop_assert!(contrast(&p) >= 0.0);
        let m = local_homogeneity(&p);
        prop_assert!(m > 0.0 && m <= 1.0 + 1e-12);
    }

    #[test]
    fn diagonal_iff_zero_contrast_iff_unit_homogeneity(p in table(), zero_off in any::<bool>()) {
        let g = p.levels();
        let p = if zero_off {
            let mut v = p.values().to_vec();
            for i in 0..g {
                for j in 0..g {
                    if i != j {
                        v[i * g + j] = 0.0;
                    }
                }
            }
            let s: f64 = v.iter().sum();
            if s == 0.0 {
                return Ok(());
            }
            Probabilities::from_table(g, v.iter().map(|x| x / s).collect()).unwrap()
        } else {
            p
        };
        let diagonal = (0..g).all(|i| (0..g).all(|j| i == j || p.get(i, j) == 0.0));
        prop_assert_eq!(contrast(&p) == 0.0, diagonal);
        prop_assert_eq!((local_homogeneity(&p) - 1.0).abs() < 1e-12, diagonal);
    }

    #[test]
    fn independence_gives_unit_chi_and_zero_correlation((a, b) in marginals()) {
        let p = Probabilities::outer(&a, &b).unwrap();
        prop_assert!((chi_square(&p) - 1.0).abs() < 1e-9);
        prop_assert!(correlation(&p, &MarginalStats::of(&p)).abs() < 1e-9);
    }

    #[test]
    fn threshold_partition(values in prop::collection::vec(-1e3f64..1e3, 1..300), p in 0.0f64..=100.0) {
        let map = ScalarMap::new(values.len(), 1, values.clone()).unwrap();
        let h = percentile_threshold(&map, p).unwrap();
        let seg = threshold_segment(&map, h);
        let black = seg.pixels().iter().filter(|&&v| v == BLACK).count();
        let white = seg.pixels().iter().filter(|&&v| v == WHITE).count();
        prop_assert_eq!(black + white, values.len());
        prop_assert_eq!(black, values.iter().filter(|&&v| v > h).count());
        let at_or_below = values.iter().filter(|&&v| v <= h).count() as f64;
        prop_assert!(at_or_below >= p / 100.0 * values.len() as f64 - 1e-9);
    }
}

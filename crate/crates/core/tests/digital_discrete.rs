//! The digital solver agrees with the exact discrete solver on unit grids.

use fuzzycont::{digital_intermediate, discrete_intermediate, CodomainGrid, FuzzyParams, SampledFunction};
use proptest::prelude::*;

fn walk() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (-20i64..20, -5i64..5, prop::collection::vec(-1i64..=1, 1..30)).prop_map(|(x0, y0, steps)| {
        let mut ys = vec![y0];
        for s in steps {
            ys.push(ys.last().unwrap() + s);
        }
        (x0, ys)
    })
}

proptest! {
    #[test]
    fn digital_matches_discrete((x0, ys) in walk(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let n = ys.len();
        let (i, j) = (i.index(n).min(j.index(n)), i.index(n).max(j.index(n)));
        prop_assume!(i < j);
        let (fm, fn_) = (ys[i], ys[j]);
        let pairs: Vec<(f64, f64)> = ys.iter().enumerate().map(|(k, &y)| ((x0 + k as i64) as f64, y as f64)).collect();
        let f = SampledFunction::from_pairs(&pairs, 0.0).unwrap();
        let grid = CodomainGrid::uniform(1.0).unwrap();
        let params = FuzzyParams::new(1.0, 1.0).unwrap();
        let (m, n) = (x0 + i as i64, x0 + j as i64);
        for l in fm.min(fn_) + 1..fm.max(fn_) {
            let d = digital_intermediate(&f, m, n, l).unwrap();
            let e = discrete_intermediate(&f, &grid, m as f64, n as f64, l as f64, params).unwrap();
            prop_assert_eq!(d.c, e.c);
            prop_assert_eq!(e.residual, 0.0);
        }
    }
}

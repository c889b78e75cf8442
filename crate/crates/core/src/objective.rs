//! Normalized monotone submodular objectives, curvature, and exhaustive
//! property checkers.

use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par;
use crate::set::ElementSet;

/// Largest ground set the exhaustive `2^n` checkers accept.
pub const MAX_EXHAUSTIVE_N: usize = 16;

/// Default number of entries held by an evaluation cache.
pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 20;

/// Absolute tolerance used by the checkers for non-integer instances.
pub const CHECK_TOLERANCE: f64 = 1e-12;

/// The shipped objective families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `f(S)` is the total weight of items covered by at least one element of `S`.
    WeightedCoverage {
        item_weights: Vec<f64>,
        covers: Vec<Vec<usize>>,
    },
    /// `f(S) = Σ_j max_{i∈S} values[i][j]`, rows are elements, columns clients.
    FacilityLocation {
        values: Vec<Vec<f64>>,
    },
    Modular {
        weights: Vec<f64>,
    },
    /// One value per subset, indexed by bitmask (bit `i` set iff element `i` present).
    ExplicitTable {
        values: Vec<f64>,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::WeightedCoverage { .. } => "weighted_coverage",
            Family::FacilityLocation { .. } => "facility_location",
            Family::Modular { .. } => "modular",
            Family::ExplicitTable { .. } => "explicit",
        }
    }
}

/// Value-transparent memo of `f(S)` keyed by canonical sets. Once full, new
/// entries are dropped rather than evicting old ones.
#[derive(Debug)]
struct EvalCache {
    map: DashMap<Vec<usize>, f64>,
    capacity: usize,
}

/// Oracle for a normalized monotone submodular set function over `{0, …, n-1}`.
///
/// Objectives are immutable once built. Clones share the evaluation cache,
/// which is safe to use from many threads at once.
#[derive(Debug, Clone)]
pub struct Objective {
    family: Family,
    n: usize,
    cache: Option<Arc<EvalCache>>,
}

impl PartialEq for Objective {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.family == other.family
    }
}

fn check_values(what: &str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite() || *v < 0.0) {
        Some(i) => Err(Error::InvalidInstance(format!(
            "{what}[{i}] = {} is not a nonnegative finite number",
            values[i]
        ))),
        None => Ok(()),
    }
}

impl Objective {
    pub fn weighted_coverage(item_weights: Vec<f64>, covers: Vec<Vec<usize>>) -> Result<Self> {
        check_values("item_weights", &item_weights)?;
        let m = item_weights.len();
        let mut canonical = Vec::with_capacity(covers.len());
        for (e, cover) in covers.into_iter().enumerate() {
            let mut cover = cover;
            cover.sort_unstable();
            cover.dedup();
            if let Some(&item) = cover.last().filter(|&&i| i >= m) {
                return Err(Error::InvalidInstance(format!(
                    "element {e} covers item {item}, but there are only {m} items"
                )));
            }
            canonical.push(cover);
        }
        Ok(Objective {
            n: canonical.len(),
            family: Family::WeightedCoverage {
                item_weights,
                covers: canonical,
            },
            cache: None,
        })
    }

    pub fn facility_location(values: Vec<Vec<f64>>) -> Result<Self> {
        let m = values.first().map_or(0, Vec::len);
        for (i, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidInstance(format!(
                    "value row {i} has {} columns, expected {m}",
                    row.len()
                )));
            }
            check_values("values", row)?;
        }
        Ok(Objective {
            n: values.len(),
            family: Family::FacilityLocation { values },
            cache: None,
        })
    }

    pub fn modular(weights: Vec<f64>) -> Result<Self> {
        check_values("weights", &weights)?;
        Ok(Objective {
            n: weights.len(),
            family: Family::Modular { weights },
            cache: None,
        })
    }

    /// Builds a tabulated objective and verifies it is normalized, monotone,
    /// and submodular.
    pub fn explicit(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > MAX_EXHAUSTIVE_N {
            return Err(Error::InstanceTooLarge {
                n,
                limit: MAX_EXHAUSTIVE_N,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidInstance(format!(
                "explicit table for n = {n} needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        check_values("values", &values)?;
        let f = Objective {
            n,
            family: Family::ExplicitTable { values },
            cache: None,
        };
        if !check_normalized(&f) {
            return Err(Error::InvalidInstance("explicit table has f(∅) ≠ 0".into()));
        }
        if !check_monotone(&f)? {
            return Err(Error::InvalidInstance(
                "explicit table is not monotone".into(),
            ));
        }
        if !check_submodular(&f)? {
            return Err(Error::InvalidInstance(
                "explicit table is not submodular".into(),
            ));
        }
        Ok(f)
    }

    /// Builds a tabulated objective without the load-time property checks.
    /// Used to plant counterexamples for the checkers.
    pub fn explicit_unchecked(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > MAX_EXHAUSTIVE_N || values.len() != 1 << n {
            return Err(Error::InvalidInstance(format!(
                "explicit table must hold 2^n values for n ≤ {MAX_EXHAUSTIVE_N}"
            )));
        }
        Ok(Objective {
            n,
            family: Family::ExplicitTable { values },
            cache: None,
        })
    }

    /// Attaches a fresh evaluation cache holding at most `capacity` entries.
    pub fn with_cache(mut self, capacity: usize) -> Self {
        self.cache = Some(Arc::new(EvalCache {
            map: DashMap::new(),
            capacity,
        }));
        self
    }

    pub fn without_cache(mut self) -> Self {
        self.cache = None;
        self
    }

    pub fn has_cache(&self) -> bool {
        self.cache.is_some()
    }

    /// Size of the ground set the objective is defined over.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// `f(S)`.
    pub fn evaluate(&self, s: &ElementSet) -> Result<f64> {
        s.check_within(self.n)?;
        Ok(self.value(s.as_slice()))
    }

    /// `f(S ∪ {x}) − f(S)`, computed from the family's structure.
    pub fn marginal(&self, x: usize, s: &ElementSet) -> Result<f64> {
        if x >= self.n {
            return Err(Error::InvalidElement { id: x, n: self.n });
        }
        s.check_within(self.n)?;
        if s.contains(x) {
            return Err(Error::InvalidArgument(format!(
                "element {x} is already in the set {s}"
            )));
        }
        Ok(self.marginal_value(x, s.as_slice()))
    }

    /// `f({x})` for a valid id.
    pub(crate) fn singleton(&self, x: usize) -> f64 {
        self.value(&[x])
    }

    /// `f(S)` for a sorted id slice already known to be in range.
    pub(crate) fn value(&self, s: &[usize]) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        let Some(cache) = &self.cache else {
            return self.compute(s);
        };
        if let Some(v) = cache.map.get(s) {
            return *v;
        }
        let v = self.compute(s);
        if cache.map.len() < cache.capacity {
            cache.map.insert(s.to_vec(), v);
        }
        v
    }

    fn compute(&self, s: &[usize]) -> f64 {
        match &self.family {
            Family::WeightedCoverage {
                item_weights,
                covers,
            } => {
                let mut covered = vec![false; item_weights.len()];
                for &e in s {
                    for &item in &covers[e] {
                        covered[item] = true;
                    }
                }
                item_weights
                    .iter()
                    .zip(&covered)
                    .filter(|(_, &c)| c)
                    .map(|(w, _)| w)
                    .fold(0.0, |acc, w| acc + w)
            }
            Family::FacilityLocation { values } => {
                let m = values.first().map_or(0, Vec::len);
                (0..m)
                    .map(|j| s.iter().map(|&i| values[i][j]).fold(0.0, f64::max))
                    .fold(0.0, |acc, v| acc + v)
            }
            Family::Modular { weights } => {
                s.iter().map(|&i| weights[i]).fold(0.0, |acc, w| acc + w)
            }
            Family::ExplicitTable { values } => values[mask_of(s)],
        }
    }

    pub(crate) fn marginal_value(&self, x: usize, s: &[usize]) -> f64 {
        match &self.family {
            Family::WeightedCoverage {
                item_weights,
                covers,
            } => {
                let mut covered = vec![false; item_weights.len()];
                for &e in s {
                    for &item in &covers[e] {
                        covered[item] = true;
                    }
                }
                covers[x]
                    .iter()
                    .filter(|&&item| !covered[item])
                    .map(|&item| item_weights[item])
                    .fold(0.0, |acc, w| acc + w)
            }
            Family::FacilityLocation { values } => values[x]
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let best = s.iter().map(|&i| values[i][j]).fold(0.0, f64::max);
                    (v - best).max(0.0)
                })
                .fold(0.0, |acc, v| acc + v),
            Family::Modular { weights } => weights[x],
            Family::ExplicitTable { values } => {
                let m = mask_of(s);
                values[m | 1 << x] - values[m]
            }
        }
    }

    /// All `2^n` values indexed by bitmask.
    pub fn value_table(&self) -> Result<Vec<f64>> {
        if self.n > MAX_EXHAUSTIVE_N {
            return Err(Error::InstanceTooLarge {
                n: self.n,
                limit: MAX_EXHAUSTIVE_N,
            });
        }
        if let Family::ExplicitTable { values } = &self.family {
            return Ok(values.clone());
        }
        Ok(par::map_range(1 << self.n, |mask| {
            let s: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
            self.compute(&s)
        }))
    }

    /// Curvature of `f` over its whole ground set:
    /// `ν = 1 − min_x (f(Ω) − f(Ω∖{x})) / f({x})`.
    ///
    /// Elements with `f({x}) = 0` are skipped and reported; ties in the min go
    /// to the smallest id; the result is clamped to `[0, 1]`.
    pub fn curvature(&self) -> Result<Curvature> {
        if self.n == 0 {
            return Err(Error::InvalidArgument(
                "curvature needs a nonempty ground set".into(),
            ));
        }
        let ratios = par::map_range(self.n, |x| {
            let fx = self.singleton(x);
            if fx <= 0.0 {
                return None;
            }
            let rest: Vec<usize> = (0..self.n).filter(|&i| i != x).collect();
            Some(self.marginal_value(x, &rest) / fx)
        });
        let mut skipped = Vec::new();
        let mut best: Option<(usize, f64)> = None;
        for (x, r) in ratios.into_iter().enumerate() {
            match r {
                None => skipped.push(x),
                Some(r) => {
                    if best.is_none_or(|(_, b)| r < b) {
                        best = Some((x, r));
                    }
                }
            }
        }
        let (argmin_element, min_ratio) = best.ok_or(Error::DegenerateObjective)?;
        Ok(Curvature {
            nu: (1.0 - min_ratio).clamp(0.0, 1.0),
            argmin_element,
            skipped_null_elements: skipped,
        })
    }
}

fn mask_of(s: &[usize]) -> usize {
    s.iter().fold(0usize, |m, &i| m | 1 << i)
}

/// Total curvature of an objective.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curvature {
    pub nu: f64,
    pub argmin_element: usize,
    pub skipped_null_elements: Vec<usize>,
}

/// `f(∅) = 0`.
pub fn check_normalized(f: &Objective) -> bool {
    f.compute(&[]).abs() <= CHECK_TOLERANCE
}

fn table_tolerance(table: &[f64]) -> f64 {
    if table.iter().all(|v| v.fract() == 0.0) {
        0.0
    } else {
        CHECK_TOLERANCE
    }
}

/// Exhaustively verifies `f(S) ≤ f(T)` for all `S ⊆ T` through the
/// equivalent single-element steps `f(S) ≤ f(S ∪ {x})`.
pub fn check_monotone(f: &Objective) -> Result<bool> {
    let table = f.value_table()?;
    let tol = table_tolerance(&table);
    let n = f.n;
    let ok = par::map_range(table.len(), |mask| {
        (0..n)
            .filter(|x| mask >> x & 1 == 0)
            .all(|x| table[mask] <= table[mask | 1 << x] + tol)
    });
    Ok(ok.into_iter().all(|b| b))
}

/// Exhaustively verifies diminishing returns through the equivalent local
/// condition `f(S+x) − f(S) ≥ f(S+x+y) − f(S+y)` for all `S` and `x, y ∉ S`.
pub fn check_submodular(f: &Objective) -> Result<bool> {
    let table = f.value_table()?;
    let tol = table_tolerance(&table);
    let n = f.n;
    let ok = par::map_range(table.len(), |mask| {
        let free: Vec<usize> = (0..n).filter(|x| mask >> x & 1 == 0).collect();
        free.iter().enumerate().all(|(i, &x)| {
            free[i + 1..].iter().all(|&y| {
                let gain_small = table[mask | 1 << x] - table[mask];
                let gain_large = table[mask | 1 << x | 1 << y] - table[mask | 1 << y];
                gain_small >= gain_large - tol
            })
        })
    });
    Ok(ok.into_iter().all(|b| b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w1() -> Objective {
        Objective::weighted_coverage(vec![1.0, 1.0, 1.0], vec![vec![0, 1], vec![1, 2], vec![2]])
            .unwrap()
    }

    fn w3() -> Objective {
        Objective::weighted_coverage(vec![1.0, 1.0, 1.0], vec![vec![0, 2], vec![1, 2]]).unwrap()
    }

    fn modular321() -> Objective {
        Objective::modular(vec![3.0, 2.0, 1.0]).unwrap()
    }

    /// Straight from the definition: every pair S ⊆ T, every x ∉ T.
    fn submodular_by_definition(table: &[f64], n: usize) -> bool {
        let full = 1usize << n;
        (0..full).all(|t| {
            let mut s = t;
            loop {
                let ok = (0..n)
                    .filter(|x| t >> x & 1 == 0)
                    .all(|x| table[s | 1 << x] - table[s] >= table[t | 1 << x] - table[t] - 1e-12);
                if !ok {
                    return false;
                }
                if s == 0 {
                    return true;
                }
                s = (s - 1) & t;
            }
        })
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(w1().evaluate(&ElementSet::empty()).unwrap(), 0.0);
        assert_eq!(w1().evaluate(&ElementSet::from([0, 1])).unwrap(), 3.0);
        assert_eq!(
            modular321().evaluate(&ElementSet::from([0, 2])).unwrap(),
            4.0
        );
    }

    #[test]
    fn evaluate_rejects_out_of_range() {
        assert_eq!(
            w1().evaluate(&ElementSet::from([3])),
            Err(Error::InvalidElement { id: 3, n: 3 })
        );
    }

    #[test]
    fn marginal_examples() {
        assert_eq!(w1().marginal(1, &ElementSet::from([0])).unwrap(), 1.0);
        assert_eq!(w1().marginal(2, &ElementSet::from([1])).unwrap(), 0.0);
        assert_eq!(
            modular321().marginal(1, &ElementSet::from([0])).unwrap(),
            2.0
        );
        assert!(matches!(
            w1().marginal(0, &ElementSet::from([0])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn curvature_examples() {
        let c = modular321().curvature().unwrap();
        assert_eq!(c.nu, 0.0);
        let c = w3().curvature().unwrap();
        assert!((c.nu - 0.5).abs() < 1e-12);
        assert_eq!(c.argmin_element, 0);
        let c = w1().curvature().unwrap();
        assert_eq!(c.nu, 1.0);
        assert_eq!(c.argmin_element, 1);
    }

    #[test]
    fn curvature_skips_null_elements() {
        let f =
            Objective::weighted_coverage(vec![1.0, 2.0], vec![vec![0], vec![], vec![1]]).unwrap();
        let c = f.curvature().unwrap();
        assert_eq!(c.skipped_null_elements, vec![1]);
        assert_eq!(c.nu, 0.0);
        assert_ne!(c.argmin_element, 1);
    }

    #[test]
    fn curvature_degenerate_and_empty() {
        let f = Objective::modular(vec![0.0, 0.0]).unwrap();
        assert_eq!(f.curvature(), Err(Error::DegenerateObjective));
        let f = Objective::modular(vec![]).unwrap();
        assert!(matches!(f.curvature(), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn checker_examples() {
        let f = w1();
        assert!(check_normalized(&f));
        assert!(check_monotone(&f).unwrap());
        assert!(check_submodular(&f).unwrap());

        let planted = Objective::explicit_unchecked(2, vec![0.0, 1.0, 1.0, 3.0]).unwrap();
        assert!(!check_submodular(&planted).unwrap());
        assert!(!submodular_by_definition(
            &planted.value_table().unwrap(),
            2
        ));

        let ok = Objective::explicit(2, vec![0.0, 2.0, 1.0, 2.0]).unwrap();
        assert!(check_normalized(&ok));
        assert!(check_monotone(&ok).unwrap());
        assert!(check_submodular(&ok).unwrap());
    }

    #[test]
    fn explicit_load_rejects_bad_tables() {
        assert!(Objective::explicit(2, vec![0.0, 1.0, 1.0, 3.0]).is_err());
        assert!(Objective::explicit(2, vec![1.0, 1.0, 1.0, 1.0]).is_err());
        assert!(Objective::explicit(2, vec![0.0, 2.0, 1.0, 1.5]).is_err());
        assert!(Objective::explicit(2, vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn checkers_reject_large_n() {
        let f = Objective::modular(vec![1.0; 17]).unwrap();
        assert_eq!(
            check_monotone(&f),
            Err(Error::InstanceTooLarge { n: 17, limit: 16 })
        );
    }

    #[test]
    fn constructors_validate() {
        assert!(Objective::modular(vec![1.0, -1.0]).is_err());
        assert!(Objective::modular(vec![f64::NAN]).is_err());
        assert!(Objective::weighted_coverage(vec![1.0], vec![vec![1]]).is_err());
        assert!(Objective::facility_location(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
    }

    fn arb_objective() -> impl Strategy<Value = Objective> {
        let coverage = (1usize..8, 1usize..8).prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(0.0f64..1.0, m),
                proptest::collection::vec(proptest::collection::vec(0..m, 0..=m), n),
            )
                .prop_map(|(w, c)| Objective::weighted_coverage(w, c).unwrap())
        });
        let facility = (1usize..8, 1usize..6).prop_flat_map(|(n, m)| {
            proptest::collection::vec(proptest::collection::vec(0.0f64..1.0, m), n)
                .prop_map(|v| Objective::facility_location(v).unwrap())
        });
        let modular = proptest::collection::vec(0.0f64..1.0, 1..8)
            .prop_map(|w| Objective::modular(w).unwrap());
        prop_oneof![coverage, facility, modular]
    }

    proptest! {
        #[test]
        fn shipped_families_pass_checkers(f in arb_objective()) {
            prop_assert!(check_normalized(&f));
            prop_assert!(check_monotone(&f).unwrap());
            prop_assert!(check_submodular(&f).unwrap());
            prop_assert!(submodular_by_definition(&f.value_table().unwrap(), f.n()));
        }

        #[test]
        fn marginals_are_monotone_and_diminishing(
            f in arb_objective(), s_mask in any::<u64>(), extra in any::<u64>(), x in any::<usize>()
        ) {
            let n = f.n();
            let x = x % n;
            let full = (1u64 << n) - 1;
            let s = ElementSet::from_mask(s_mask & full & !(1 << x));
            let t = ElementSet::from_mask((s_mask | extra) & full & !(1 << x));
            let gs = f.marginal(x, &s).unwrap();
            let gt = f.marginal(x, &t).unwrap();
            prop_assert!(gs >= 0.0);
            prop_assert!(gs >= gt - 1e-12);
            let diff = f.evaluate(&s.with(x)).unwrap() - f.evaluate(&s).unwrap();
            prop_assert!((diff - gs).abs() <= 1e-12);
        }

        #[test]
        fn curvature_lower_bound_holds_on_every_subset(f in arb_objective()) {
            let Ok(c) = f.curvature() else { return Ok(()); };
            prop_assert!((0.0..=1.0).contains(&c.nu));
            let table = f.value_table().unwrap();
            for (mask, &v) in table.iter().enumerate() {
                let sum: f64 = (0..f.n()).filter(|i| mask >> i & 1 == 1).map(|i| f.singleton(i)).sum();
                prop_assert!(v >= (1.0 - c.nu) * sum - 1e-12);
            }
        }

        #[test]
        fn modular_curvature_is_zero(w in proptest::collection::vec(0.01f64..10.0, 1..10)) {
            prop_assert_eq!(Objective::modular(w).unwrap().curvature().unwrap().nu, 0.0);
        }
    }

    #[test]
    fn cache_is_transparent() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let n = 12;
        let values: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..7).map(|_| rng.random::<f64>()).collect())
            .collect();
        let plain = Objective::facility_location(values).unwrap();
        let cached = plain.clone().with_cache(DEFAULT_CACHE_CAPACITY);
        for _ in 0..1000 {
            // Small masks so queries repeat and hit the cache.
            let s = ElementSet::from_mask(rng.random_range(0..256u64) << 4);
            let a = plain.evaluate(&s).unwrap();
            let b = cached.evaluate(&s).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn full_cache_stops_inserting() {
        let f = modular321().with_cache(2);
        for mask in 1..8u64 {
            f.evaluate(&ElementSet::from_mask(mask)).unwrap();
        }
        assert_eq!(f.cache.as_ref().unwrap().map.len(), 2);
        assert_eq!(f.evaluate(&ElementSet::from([0, 1, 2])).unwrap(), 6.0);
    }
}

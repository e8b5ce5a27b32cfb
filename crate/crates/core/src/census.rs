//! Evaluators for the counting bounds, and exact miniature counts that
//! the bounds majorize.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::haas::haas_family_count;
use crate::hp::{HpReal, REPORT_DIGITS};
use crate::partitions::partition_counts;
use crate::scheme::{condition_star_check, enumerate_admissible_schemes, forests_by_size, harnack_bound, Node, RealScheme};
use crate::trees::{count_rooted_trees, OTTER_CONSTANT};

/// Largest degree accepted by [`admissible_count`].
pub const MAX_ADMISSIBLE_DEGREE: u32 = 5;
/// Largest oval count accepted by [`star_scheme_count`].
pub const MAX_STAR_OVALS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: u32, got: u32 },
    #[error("guard exceeded: {what} = {value}, at most {max} supported")]
    GuardExceeded { what: &'static str, value: u64, max: u64 },
    #[error("inputs must not contain a pseudoline")]
    Pseudoline,
    #[error("N0 must be positive")]
    NonPositive,
}

/// Product of `lo..hi` by binary splitting.
fn range_product(lo: u64, hi: u64) -> BigUint {
    match hi.saturating_sub(lo) {
        0 => BigUint::one(),
        1 => BigUint::from(lo),
        len => {
            let mid = lo + len / 2;
            range_product(lo, mid) * range_product(mid, hi)
        }
    }
}

/// `binom(n, k)` as one exact division of two balanced products.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    range_product(n - k + 1, n + 1) / range_product(1, k + 1)
}

fn ln_u(n: &BigUint) -> HpReal {
    HpReal::ln_biguint(n).expect("positive argument")
}

fn ln24_over_3() -> HpReal {
    &ln_u(&BigUint::from(24u32)) / &HpReal::from_i64(3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingBound {
    pub d_k: BigUint,
    /// Lower bound for `log N_k`.
    pub log_n_k: HpReal,
    /// `exp((log N_0 - log(24)/3) / (d_0 + 6)^2)`.
    pub constant: HpReal,
}

/// Iterating `d -> 2d + 6`, `N -> N^4 / 24` from `(d0, N0)` for `k` steps.
pub fn prop1_lower_bound(d0: u32, n0: &BigUint, k: u32) -> Result<DoublingBound, CensusError> {
    if d0 < 1 {
        return Err(CensusError::DegreeTooSmall { min: 1, got: d0 });
    }
    if n0.is_zero() {
        return Err(CensusError::NonPositive);
    }
    let d_k = (BigUint::one() << k as usize) * BigUint::from(d0 + 6) - BigUint::from(6u32);
    let c = ln24_over_3();
    let excess = &ln_u(n0) - &c;
    let four_k = HpReal::from_biguint(&(BigUint::one() << (2 * k as usize)));
    let log_n_k = &(&four_k * &excess) + &c;
    let side = i64::from(d0) + 6;
    let constant = (&excess / &HpReal::from_i64(side * side)).exp();
    Ok(DoublingBound { d_k, log_n_k, constant })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithThomBound {
    /// Degree of the discriminant hypersurface, `3(d-1)^2`.
    pub h: BigUint,
    /// Dimension of the projectivized coefficient space.
    pub n: BigUint,
    /// `N log h`.
    pub log_bound: HpReal,
}

pub fn smith_thom_bound(d: u32) -> Result<SmithThomBound, CensusError> {
    if d < 2 {
        return Err(CensusError::DegreeTooSmall { min: 2, got: d });
    }
    let d = u64::from(d);
    let h = BigUint::from(3 * (d - 1) * (d - 1));
    let n = binomial(d + 2, 2) - BigUint::one();
    let log_bound = &HpReal::from_biguint(&n) * &ln_u(&h);
    Ok(SmithThomBound { h, n, log_bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtBound {
    /// `binom(2d^2, (d+1)(d+2)/2 - 1)`.
    pub binomial: BigUint,
    pub log_binomial: HpReal,
    /// The `d^2/2`-th root of the binomial; tends to `4^4 / 3^3`.
    pub normalized: HpReal,
}

pub fn dt_upper_bound(d: u32) -> Result<DtBound, CensusError> {
    if d < 2 {
        return Err(CensusError::DegreeTooSmall { min: 2, got: d });
    }
    let d = u64::from(d);
    let b = binomial(2 * d * d, (d + 1) * (d + 2) / 2 - 1);
    let log_binomial = ln_u(&b);
    let normalized = (&(&log_binomial * &HpReal::from_i64(2)) / &HpReal::from_i64((d * d) as i64)).exp();
    Ok(DtBound { binomial: b, log_binomial, normalized })
}

/// `4^4 / 3^3`.
pub fn dt_limit() -> HpReal {
    HpReal::from_ratio(&BigInt::from(256), &BigInt::from(27))
}

/// `A = log(C) / 2` with `C` the rooted-tree growth constant.
pub fn constant_a() -> HpReal {
    let c = HpReal::from_decimal_str(&OTTER_CONSTANT.to_string()).expect("decimal literal");
    &c.ln().expect("positive") / &HpReal::from_i64(2)
}

/// Number of canonical schemes passing the admissibility surrogate for
/// degree `d` (all oval counts up to the Harnack bound).
pub fn admissible_count(d: u32) -> Result<u64, CensusError> {
    if d > MAX_ADMISSIBLE_DEGREE {
        return Err(CensusError::GuardExceeded {
            what: "d",
            value: d.into(),
            max: MAX_ADMISSIBLE_DEGREE.into(),
        });
    }
    if d < 1 {
        return Err(CensusError::DegreeTooSmall { min: 1, got: d });
    }
    let l = harnack_bound(d).expect("d >= 1") as usize;
    let schemes = enumerate_admissible_schemes(d, l).map_err(|_| CensusError::GuardExceeded {
        what: "harnack bound",
        value: l as u64,
        max: crate::scheme::MAX_ENUMERATION_OVALS as u64,
    })?;
    Ok(schemes.len() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCount {
    /// Canonical schemes with at most `max_ovals` ovals satisfying (*).
    pub exact: u64,
    /// `sum_m sum_k T_{k+1} [x^(m-k)] P(x)^(k+1)`: trees of deep ovals
    /// decorated by partitions.
    pub decomposition_bound: BigUint,
    /// `sum_m sum_k T_{k+1} binom(m, k) exp(a sqrt((m-k)(k+1)))` with
    /// `a = pi sqrt(2/3)`, from `log p(m) < a sqrt(m)` and Cauchy-Schwarz.
    pub analytic_bound: HpReal,
}

/// `pi sqrt(2/3)` to well beyond report precision.
fn hardy_ramanujan_a() -> HpReal {
    let pi = HpReal::from_decimal_str(
        "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798",
    )
    .expect("decimal literal");
    let two_thirds = HpReal::from_ratio(&BigInt::from(2), &BigInt::from(3));
    &pi * &two_thirds.sqrt().expect("positive")
}

/// Deep ovals (those with a grandchild) together with the root form a
/// rooted tree; every other oval is a child or grandchild of one of its
/// vertices, so each vertex carries a partition.
pub fn star_scheme_count(max_ovals: usize, d: u32) -> Result<StarCount, CensusError> {
    if max_ovals > MAX_STAR_OVALS {
        return Err(CensusError::GuardExceeded {
            what: "max_ovals",
            value: max_ovals as u64,
            max: MAX_STAR_OVALS as u64,
        });
    }
    let forests = forests_by_size(max_ovals, max_ovals);
    let exact = forests
        .into_iter()
        .flatten()
        .filter(|f| condition_star_check(&RealScheme::from_ovals(f.clone(), false), d))
        .count() as u64;

    let deep_max = (3 * d / 2) as usize;
    let p = partition_counts(max_ovals);
    // powers[j][m] = [x^m] P(x)^j
    let mut powers: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); max_ovals + 1]];
    powers[0][0] = BigUint::one();
    for j in 1..=max_ovals + 1 {
        let prev = &powers[j - 1];
        let next: Vec<BigUint> =
            (0..=max_ovals).map(|m| (0..=m).map(|i| &prev[i] * &p[m - i]).sum()).collect();
        powers.push(next);
    }
    let a = hardy_ramanujan_a();
    let mut decomposition_bound = BigUint::zero();
    let mut analytic_bound = HpReal::zero();
    for m in 0..=max_ovals {
        for k in 0..=m.min(deep_max) {
            let trees = count_rooted_trees(k + 1);
            decomposition_bound += &trees * &powers[k + 1][m - k];
            let root = HpReal::from_i64(((m - k) * (k + 1)) as i64).sqrt().expect("non-negative");
            let weight = HpReal::from_biguint(&(&trees * binomial(m as u64, k as u64)));
            analytic_bound = &analytic_bound + &(&weight * &(&a * &root).exp());
        }
    }
    Ok(StarCount { exact, decomposition_bound, analytic_bound })
}

/// `1<s1> u 1<s2> u 1<s3> u 1<s4>`, canonical.
pub fn compose_quadruple(parts: [&RealScheme; 4]) -> Result<RealScheme, CensusError> {
    if parts.iter().any(|s| s.pseudoline) {
        return Err(CensusError::Pseudoline);
    }
    let ovals: Vec<Node> = parts.iter().map(|s| Node::with_children(s.root.children.clone())).collect();
    Ok(RealScheme::from_ovals(ovals, false).canonical())
}

/// Distinct outputs of [`compose_quadruple`] over all unordered quadruples
/// drawn with repetition from `base`.
pub fn quadruple_output_count(base: &[RealScheme]) -> Result<usize, CensusError> {
    let n = base.len();
    let mut seen = BTreeSet::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                for l in k..n {
                    seen.insert(compose_quadruple([&base[i], &base[j], &base[k], &base[l]])?);
                }
            }
        }
    }
    Ok(seen.len())
}

/// One named formula with its values as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub formula: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub values: Vec<(&'static str, String)>,
}

fn real(x: &HpReal) -> String {
    x.to_decimal(REPORT_DIGITS)
}

/// Every bound evaluator applicable at degree `d`.
pub fn census_report(d: u32) -> Result<Vec<BoundReport>, CensusError> {
    if d < 1 {
        return Err(CensusError::DegreeTooSmall { min: 1, got: d });
    }
    let mut out = Vec::new();
    let ds = d.to_string();
    out.push(BoundReport {
        formula: "harnack",
        params: vec![("d", ds.clone())],
        values: vec![("l", harnack_bound(d).expect("d >= 1").to_string())],
    });
    if d >= 2 {
        let st = smith_thom_bound(d)?;
        out.push(BoundReport {
            formula: "smith_thom",
            params: vec![("d", ds.clone())],
            values: vec![("h", st.h.to_string()), ("N", st.n.to_string()), ("log_bound", real(&st.log_bound))],
        });
        let dt = dt_upper_bound(d)?;
        out.push(BoundReport {
            formula: "dt_upper",
            params: vec![("d", ds.clone())],
            values: vec![
                ("log_binomial", real(&dt.log_binomial)),
                ("normalized", real(&dt.normalized)),
                ("limit", real(&dt_limit())),
            ],
        });
    }
    for (d0, n0) in [(6u32, 56u32), (8, 2500)] {
        let b = prop1_lower_bound(d0, &BigUint::from(n0), 0)?;
        out.push(BoundReport {
            formula: "doubling_constant",
            params: vec![("d0", d0.to_string()), ("N0", n0.to_string())],
            values: vec![("constant", real(&b.constant))],
        });
    }
    let a = constant_a();
    out.push(BoundReport {
        formula: "constant_a",
        params: Vec::new(),
        values: vec![("A", real(&a)), ("C", OTTER_CONSTANT.to_string())],
    });
    if d <= MAX_ADMISSIBLE_DEGREE {
        out.push(BoundReport {
            formula: "admissible_count",
            params: vec![("d", ds.clone())],
            values: vec![("count", admissible_count(d)?.to_string())],
        });
    }
    if let Ok(n) = haas_family_count(d) {
        out.push(BoundReport {
            formula: "haas_family_count",
            params: vec![("d", ds)],
            values: vec![("count", n.to_string())],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::parse_scheme;

    fn close(x: &HpReal, target: f64, tol: f64) -> bool {
        (x.to_f64() - target).abs() <= tol
    }

    #[test]
    fn doubling_constants() {
        let c6 = prop1_lower_bound(6, &BigUint::from(56u32), 1).unwrap();
        assert_eq!(c6.d_k, BigUint::from(18u32));
        assert!(close(&c6.constant, 1.02081, 1e-4), "{}", c6.constant);
        let c8 = prop1_lower_bound(8, &BigUint::from(2500u32), 0).unwrap();
        assert!(close(&c8.constant, 1.03511, 1e-4), "{}", c8.constant);
    }

    #[test]
    fn doubling_recursion_matches_closed_form() {
        // iterate log N -> 4 log N - log 24 directly
        let n0 = BigUint::from(56u32);
        let mut log_n = ln_u(&n0);
        let ln24 = ln_u(&BigUint::from(24u32));
        for k in 0..5 {
            let b = prop1_lower_bound(6, &n0, k).unwrap();
            assert!((b.log_n_k.to_f64() - log_n.to_f64()).abs() < 1e-9 * log_n.to_f64().abs().max(1.0));
            log_n = &(&log_n * &HpReal::from_i64(4)) - &ln24;
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 5), BigUint::from(56u32));
        assert_eq!(binomial(5, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::zero());
        let row: Vec<BigUint> = (0..=10).map(|k| binomial(10, k)).collect();
        assert_eq!(row.iter().sum::<BigUint>(), BigUint::from(1024u32));
    }

    #[test]
    fn smith_thom_small() {
        let b = smith_thom_bound(2).unwrap();
        assert_eq!((b.h, b.n), (BigUint::from(3u32), BigUint::from(5u32)));
        let b = smith_thom_bound(3).unwrap();
        assert_eq!((b.h, b.n), (BigUint::from(12u32), BigUint::from(9u32)));
        assert!(smith_thom_bound(1).is_err());
    }

    #[test]
    fn dt_small_and_limit() {
        assert_eq!(dt_upper_bound(2).unwrap().binomial, BigUint::from(56u32));
        let n = dt_upper_bound(60).unwrap().normalized.to_f64();
        assert!((n - 256.0 / 27.0).abs() / (256.0 / 27.0) < 0.1);
    }

    #[test]
    fn constant_a_value() {
        let a = constant_a();
        assert!(close(&a, 0.5419, 1e-4));
        assert!(close(&(&a * &HpReal::from_i64(2)).exp(), OTTER_CONSTANT, 1e-9));
    }

    #[test]
    fn admissible_small() {
        assert_eq!(admissible_count(2).unwrap(), 2);
        assert_eq!(admissible_count(4).unwrap(), 12);
        assert!(admissible_count(6).is_err());
    }

    #[test]
    fn star_counts() {
        assert_eq!(star_scheme_count(1, 5).unwrap().exact, 2);
        let c = star_scheme_count(3, 4).unwrap();
        assert_eq!(c.exact, 8);
        assert!(BigUint::from(c.exact) <= c.decomposition_bound);
        assert!(star_scheme_count(13, 4).is_err());
    }

    #[test]
    fn quadruples() {
        let one = parse_scheme("1").unwrap();
        let q = compose_quadruple([&one, &one, &one, &one]).unwrap();
        assert_eq!(q.to_string(), "1<1> u 1<1> u 1<1> u 1<1>");
        let a = parse_scheme("2").unwrap();
        let b = parse_scheme("1<1>").unwrap();
        let e = RealScheme::empty();
        assert_eq!(
            compose_quadruple([&a, &b, &e, &one]).unwrap(),
            compose_quadruple([&e, &one, &b, &a]).unwrap()
        );
        let j = parse_scheme("J").unwrap();
        assert_eq!(compose_quadruple([&j, &a, &a, &a]), Err(CensusError::Pseudoline));
    }

    #[test]
    fn report_lists_formulas() {
        let r = census_report(12).unwrap();
        let names: Vec<&str> = r.iter().map(|b| b.formula).collect();
        assert!(names.contains(&"haas_family_count"));
        assert!(!names.contains(&"admissible_count"));
        assert_eq!(r[0].values[0].1, "56");
    }
}

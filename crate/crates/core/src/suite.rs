//! The acceptance suite: twelve groups of exhaustive checks at small scale.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::gfq::{gcd, is_prime, prime_factors, FieldTable};
use crate::groups::{Family, LieGroupData};
use crate::invariants::{
    bockstein, bockstein_square_vanishing, brute_force_first_nonzero_degree,
    brute_force_invariant_dimension, brute_force_invariant_dimension_in, explicit_generator,
    first_nonzero_degree, invariant_dimension, GradedElement, GradedInvariantModel, MonomialKey,
};
use crate::limits::Limits;
use crate::report::Claim;
use crate::rootaction::{cross_check, scan_matches_symplectic_long_roots};
use crate::rootdata::{all_types_up_to_rank, RootSystem};
use crate::unipotent::{
    build_regular_subgroup, chevalley_commutator_check, composite_iso_check, exponent_of_u,
    fixed_flags, flag_count, height_filtration, is_central_series, is_regular_unipotent,
    nilpotency_class, orbit_decomposition, superdiagonal_subgroup,
};

/// Seed for the random elements in the Bockstein checks.
pub const BOCKSTEIN_SEED: u64 = 0x5eed;

pub const CRITERIA: [&str; 12] = [
    "first invariant degree r(2p-3) for the full unit group",
    "first invariant degree r(p-2) for the squares, with explicit generator",
    "weight counting agrees with the linear-algebra oracle",
    "Bockstein of the degree 2p-3 generator",
    "exponent of the Sylow p-subgroup U",
    "height filtration is central; commutator support; nilpotence class",
    "elementary abelian subgroup of regular unipotents",
    "composite isomorphisms, unique fixed flag, orbit sizes",
    "regularity via U_s agrees with a unique fixed flag",
    "torus action on root subgroups and lattice divisibility",
    "Coxeter number at most p implies p good",
    "invariant counts independent of the field modulus",
];

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub number: usize,
    pub title: &'static str,
    pub claims: Vec<Claim>,
    pub elapsed: Duration,
    /// Time spent on each case, for criteria with per-case limits.
    pub case_times: Vec<(String, Duration)>,
}

impl CriterionOutcome {
    pub fn pass(&self) -> bool {
        !self.claims.is_empty() && self.claims.iter().all(|c| c.pass)
    }
}

struct Ctx {
    limits: Limits,
    claims: Vec<Claim>,
    case_times: Vec<(String, Duration)>,
}

impl Ctx {
    fn group(&self, family: Family, n: usize, q: u32) -> Result<LieGroupData> {
        LieGroupData::with_limits(family, n, field_of_order(q)?, self.limits)
    }

    fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    /// Budget errors propagate; any other failure becomes a failed claim.
    fn record<T>(
        &mut self,
        description: String,
        statement: &str,
        res: Result<T>,
    ) -> Result<Option<T>> {
        match res {
            Ok(v) => Ok(Some(v)),
            Err(e @ Error::BoundExceeded { .. }) => Err(e),
            Err(e) => {
                self.push(Claim::new(
                    description,
                    statement,
                    "success",
                    format!("error: {e}"),
                    false,
                ));
                Ok(None)
            }
        }
    }
}

fn field_of_order(q: u32) -> Result<FieldTable> {
    let factors = prime_factors(q as u64);
    let [p] = factors[..] else {
        return Err(Error::NotPrime(q as u64));
    };
    let r = (1..).find(|&r| p.pow(r) >= q as u64).expect("q ≥ p");
    if p.pow(r) != q as u64 {
        return Err(Error::NotPrime(q as u64));
    }
    FieldTable::new(p as u32, r, None)
}

fn is_power_of(x: usize, p: usize) -> bool {
    let mut x = x;
    while x > 1 && x % p == 0 {
        x /= p;
    }
    x == 1
}

fn criterion_1(ctx: &mut Ctx) -> Result<()> {
    for (p, r) in [
        (2, 1),
        (2, 2),
        (3, 1),
        (3, 2),
        (5, 1),
        (5, 2),
        (7, 1),
        (11, 1),
        (13, 1),
    ] {
        let start = Instant::now();
        let model = GradedInvariantModel::new(p, r, 1)?;
        let computed = first_nonzero_degree(&model)?;
        ctx.case_times
            .push((format!("p={p} r={r}"), start.elapsed()));
        ctx.push(Claim::equal(
            format!("first nonzero invariant degree, p={p}, r={r}, d=1"),
            "invariant-degree",
            r * (2 * p - 3),
            computed,
        ));
    }
    Ok(())
}

fn criterion_2(ctx: &mut Ctx) -> Result<()> {
    for p in [3, 5, 7, 11, 13] {
        for r in [1, 2] {
            let model = GradedInvariantModel::new(p, r, 2)?;
            let expected = r * (p - 2);
            ctx.push(Claim::equal(
                format!("first nonzero invariant degree, p={p}, r={r}, d=2"),
                "square-invariant-degree",
                expected,
                first_nonzero_degree(&model)?,
            ));
            let desc = format!("explicit generator invariant in degree {expected}, p={p}, r={r}");
            if let Some(g) = ctx.record(
                desc.clone(),
                "square-invariant-generator",
                explicit_generator(&model),
            )? {
                let ok = g.degree == expected && g.monomial.is_invariant(&model);
                ctx.push(Claim::new(
                    desc,
                    "square-invariant-generator",
                    expected,
                    format!("{} in degree {}", g.monomial, g.degree),
                    ok,
                ));
            }
        }
    }
    Ok(())
}

fn criterion_3(ctx: &mut Ctx) -> Result<()> {
    for (p, r) in [(3, 1), (3, 2), (5, 1)] {
        for d in [1, 2] {
            let model = GradedInvariantModel::new(p, r, d)?;
            let counted: Vec<u64> = (0..=12).map(|m| invariant_dimension(&model, m)).collect();
            let oracle = (0..=12)
                .map(|m| brute_force_invariant_dimension(&model, m))
                .collect::<Result<Vec<u64>>>()?;
            ctx.push(Claim::equal(
                format!("invariant dimensions in degrees 0..=12, p={p}, r={r}, d={d}"),
                "oracle-agreement",
                format!("{counted:?}"),
                format!("{oracle:?}"),
            ));
        }
    }
    Ok(())
}

fn criterion_4(ctx: &mut Ctx) -> Result<()> {
    for p in [3, 5, 7] {
        let model = GradedInvariantModel::new(p, 1, 1)?;
        let x = GradedElement::monomial(MonomialKey::new(vec![true], vec![p - 2]), 1, p);
        let bx = bockstein(&x, &model)?;
        let expected = GradedElement::monomial(MonomialKey::new(vec![false], vec![p - 1]), 1, p);
        ctx.push(Claim::equal(
            format!("β({}) for p={p}", x.render()),
            "bockstein-generator",
            expected.render(),
            bx.render(),
        ));
        ctx.push(Claim::holds(
            format!(
                "β({}) is nonzero and both sides invariant, p={p}",
                x.render()
            ),
            "bockstein-generator",
            !bx.is_zero() && x.is_invariant(&model) && bx.is_invariant(&model),
        ));
        let zero = bockstein_square_vanishing(&model, 100, BOCKSTEIN_SEED + p as u64)?;
        ctx.push(Claim::equal(
            format!("β∘β = 0 on random elements, p={p}"),
            "bockstein-square",
            100,
            zero,
        ));
    }
    Ok(())
}

fn criterion_5(ctx: &mut Ctx) -> Result<()> {
    let cases: [(Family, usize, u32, u32, u64); 10] = [
        (Family::GL, 2, 2, 1, 2),
        (Family::GL, 2, 2, 2, 2),
        (Family::GL, 3, 3, 1, 3),
        (Family::GL, 3, 3, 2, 3),
        (Family::GL, 2, 3, 2, 3),
        (Family::GL, 3, 5, 1, 5),
        (Family::GL, 4, 5, 1, 5),
        (Family::Sp, 4, 5, 1, 5),
        (Family::GL, 4, 3, 1, 9),
        (Family::GL, 3, 2, 1, 4),
    ];
    for (family, n, p, r, expected) in cases {
        let g = ctx.group(family, n, p.pow(r))?;
        let start = Instant::now();
        let computed = exponent_of_u(&g)?;
        ctx.case_times.push((g.name(), start.elapsed()));
        let statement = if g.coxeter_number() <= p {
            "unipotent-exponent"
        } else {
            "unipotent-exponent-counterexample"
        };
        ctx.push(Claim::equal(
            format!("exponent of U in {} (h = {})", g.name(), g.coxeter_number()),
            statement,
            expected,
            computed,
        ));
    }
    Ok(())
}

fn criterion_6(ctx: &mut Ctx) -> Result<()> {
    let cases = [
        (Family::GL, 3, 2),
        (Family::GL, 3, 3),
        (Family::GL, 4, 2),
        (Family::GL, 4, 3),
        (Family::Sp, 4, 3),
    ];
    for (family, n, q) in cases {
        let g = ctx.group(family, n, q)?;
        let chain = height_filtration(&g)?;
        ctx.push(Claim::holds(
            format!("height filtration of U in {} is a central series", g.name()),
            "height-filtration-central",
            is_central_series(&g, &chain)?,
        ));
        ctx.push(Claim::holds(
            format!("commutator support in {}", g.name()),
            "commutator-support",
            chevalley_commutator_check(&g)?,
        ));
        let class = nilpotency_class(&g)?;
        let h = g.coxeter_number() as usize;
        ctx.push(Claim::new(
            format!("nilpotence class of U in {}", g.name()),
            "nilpotence-class",
            format!("at most {}", h - 1),
            class,
            class < h,
        ));
    }
    Ok(())
}

const REGULAR_CASES: [(Family, usize, u32, u32); 6] = [
    (Family::GL, 3, 3, 1),
    (Family::GL, 3, 3, 2),
    (Family::GL, 2, 5, 2),
    (Family::GL, 4, 5, 1),
    (Family::GL, 5, 5, 1),
    (Family::Sp, 4, 5, 1),
];

fn criterion_7(ctx: &mut Ctx) -> Result<()> {
    for (family, n, p, r) in REGULAR_CASES {
        let g = ctx.group(family, n, p.pow(r))?;
        let desc = format!("regular elementary abelian subgroup of {}", g.name());
        if let Some(a) = ctx.record(desc.clone(), "regular-subgroup", build_regular_subgroup(&g))? {
            ctx.push(Claim::equal(
                desc,
                "regular-subgroup",
                (p as usize).pow(r),
                a.order(),
            ));
        }
    }
    Ok(())
}

fn criterion_8(ctx: &mut Ctx) -> Result<()> {
    for (family, n, p, r) in REGULAR_CASES {
        let g = ctx.group(family, n, p.pow(r))?;
        let desc = format!("A → U/U_s is an isomorphism for every s in {}", g.name());
        if let Some(a) = ctx.record(
            desc.clone(),
            "composite-isomorphism",
            build_regular_subgroup(&g),
        )? {
            let mut ok = true;
            for s in 0..g.rank() {
                ok &= composite_iso_check(&g, a.elements(), s)?;
            }
            ctx.push(Claim::holds(desc, "composite-isomorphism", ok));
        }
    }
    for (n, q) in [(3, 3), (3, 4), (2, 9), (4, 5)] {
        let start = Instant::now();
        let g = ctx.group(Family::GL, n, q)?;
        let p = g.field().p() as usize;
        let gens = if g.coxeter_number() as usize <= p {
            build_regular_subgroup(&g)?.generators().to_vec()
        } else {
            superdiagonal_subgroup(&g)?.generators().to_vec()
        };
        let fixed = fixed_flags(&g, &gens)?;
        ctx.push(Claim::equal(
            format!("flags of {} fixed by A", g.name()),
            "unique-fixed-flag",
            1,
            fixed.len(),
        ));
        let orbits = orbit_decomposition(&g, &gens)?;
        let singletons = orbits.get(&1).copied().unwrap_or(0);
        let total: usize = orbits.iter().map(|(size, count)| size * count).sum();
        let p_power = orbits.keys().all(|&size| is_power_of(size, p));
        ctx.push(Claim::new(
            format!("A-orbits on the {} flags of {}", total, g.name()),
            "orbit-sizes",
            format!(
                "{} flags, 1 singleton, all sizes powers of {p}",
                flag_count(n, q as u64)
            ),
            format!(
                "{total} flags, {singletons} singleton(s), sizes {:?}",
                orbits.keys().collect::<Vec<_>>()
            ),
            total as u128 == flag_count(n, q as u64) && singletons == 1 && p_power,
        ));
        ctx.case_times.push((g.name(), start.elapsed()));
    }
    Ok(())
}

fn criterion_9(ctx: &mut Ctx) -> Result<()> {
    let cases = [2, 3, 4, 5, 7, 8, 9]
        .map(|q| (2, q))
        .into_iter()
        .chain([2, 3, 4].map(|q| (3, q)));
    for (n, q) in cases {
        let g = ctx.group(Family::GL, n, q)?;
        let mut agree = 0u64;
        for x in g.enumerate_u()? {
            let regular = is_regular_unipotent(&g, &x)?;
            let unique = fixed_flags(&g, std::slice::from_ref(&x))?.len() == 1;
            agree += (regular == unique) as u64;
        }
        ctx.push(Claim::equal(
            format!(
                "elements of U in {} where both regularity tests agree",
                g.name()
            ),
            "regularity-equivalence",
            g.u_order() as u64,
            agree,
        ));
    }
    Ok(())
}

fn criterion_10(ctx: &mut Ctx) -> Result<()> {
    let mut groups = Vec::new();
    for n in 2..=4 {
        for q in [2, 3, 4, 5, 8, 9] {
            groups.push((Family::GL, n, q));
        }
    }
    groups.push((Family::SL, 3, 4));
    for q in [2, 3, 5, 9] {
        groups.push((Family::Sp, 4, q));
    }
    for (family, n, q) in groups {
        let g = ctx.group(family, n, q)?;
        let check = cross_check(&g)?;
        ctx.push(Claim::holds(
            format!(
                "torus image index matches the character lattice in {}",
                g.name()
            ),
            "root-action-index",
            check.pass,
        ));
        let long_index = gcd(2, q as u64 - 1);
        let mut expected = Vec::new();
        let mut computed = Vec::new();
        for e in &check.entries {
            let long = family == Family::Sp && g.root_system().is_long(&e.report.root);
            expected.push(if long { long_index } else { 1 });
            computed.push(e.report.index);
        }
        ctx.push(Claim::equal(
            format!("indices over all roots of {}", g.name()),
            "root-action-index",
            format!("{expected:?}"),
            format!("{computed:?}"),
        ));
    }
    ctx.push(Claim::holds(
        "weight-lattice divisibility exceeds 1 exactly on long roots of type C (value 2), rank ≤ 8",
        "weight-lattice-divisibility",
        scan_matches_symplectic_long_roots(8)?,
    ));
    Ok(())
}

fn criterion_11(ctx: &mut Ctx) -> Result<()> {
    let mut checked = 0;
    let mut violations = Vec::new();
    for (t, rank) in all_types_up_to_rank(8) {
        let rs = RootSystem::new(t, rank)?;
        for p in (2..=31u64).filter(|&p| is_prime(p)) {
            if rs.coxeter_number() as u64 <= p {
                checked += 1;
                if !rs.is_good_prime(p) {
                    violations.push(format!("{} at p={p}", rs.name()));
                }
            }
        }
    }
    ctx.push(Claim::new(
        format!("h ≤ p implies p good ({checked} pairs with h ≤ p, rank ≤ 8, p ≤ 31)"),
        "good-primes",
        "no violations",
        if violations.is_empty() {
            "no violations".to_string()
        } else {
            violations.join(", ")
        },
        violations.is_empty(),
    ));
    Ok(())
}

/// First degrees and dimensions in degrees `0..=12` for every index `d`.
fn modulus_fingerprint(field: &FieldTable) -> Result<Vec<(u64, u32, Vec<u64>)>> {
    let order = field.q() as u64 - 1;
    let mut out = Vec::new();
    for d in (1..=order).filter(|d| order % d == 0) {
        let first = brute_force_first_nonzero_degree(field, d)?;
        let dims = (0..=12)
            .map(|m| brute_force_invariant_dimension_in(field, d, m))
            .collect::<Result<Vec<u64>>>()?;
        out.push((d, first, dims));
    }
    Ok(out)
}

fn criterion_12(ctx: &mut Ctx) -> Result<()> {
    for (p, r, other) in [(2u32, 3u32, vec![1u32, 0, 1, 1]), (3, 2, vec![2, 1, 1])] {
        let default = FieldTable::new(p, r, None)?;
        let alternative = FieldTable::new(p, r, Some(&other))?;
        let a = modulus_fingerprint(&default)?;
        let b = modulus_fingerprint(&alternative)?;
        ctx.push(Claim::new(
            format!(
                "first degrees and dimensions for all d over {} and {}",
                default, alternative
            ),
            "modulus-independence",
            format!("{a:?}"),
            format!("{b:?}"),
            a == b && default.modulus() != alternative.modulus(),
        ));
        let mut counted = Vec::new();
        for (d, _, _) in &a {
            let model = GradedInvariantModel::new(p, r, *d)?;
            counted.push((
                *d,
                first_nonzero_degree(&model)?,
                (0..=12)
                    .map(|m| invariant_dimension(&model, m))
                    .collect::<Vec<_>>(),
            ));
        }
        ctx.push(Claim::equal(
            format!("oracle over {} agrees with weight counting", alternative),
            "modulus-independence",
            format!("{counted:?}"),
            format!("{b:?}"),
        ));
    }
    Ok(())
}

/// Runs criterion `number` (1 to 12).
pub fn run_criterion(number: usize, limits: Limits) -> Result<CriterionOutcome> {
    let run: fn(&mut Ctx) -> Result<()> = match number {
        1 => criterion_1,
        2 => criterion_2,
        3 => criterion_3,
        4 => criterion_4,
        5 => criterion_5,
        6 => criterion_6,
        7 => criterion_7,
        8 => criterion_8,
        9 => criterion_9,
        10 => criterion_10,
        11 => criterion_11,
        12 => criterion_12,
        _ => return Err(Error::Precondition(format!("no criterion {number}"))),
    };
    let mut ctx = Ctx {
        limits,
        claims: Vec::new(),
        case_times: Vec::new(),
    };
    let start = Instant::now();
    run(&mut ctx)?;
    Ok(CriterionOutcome {
        number,
        title: CRITERIA[number - 1],
        claims: ctx.claims,
        elapsed: start.elapsed(),
        case_times: ctx.case_times,
    })
}

pub fn run_all(limits: Limits) -> Result<Vec<CriterionOutcome>> {
    (1..=CRITERIA.len())
        .map(|k| run_criterion(k, limits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_by_order() {
        assert_eq!(field_of_order(9).unwrap().p(), 3);
        assert_eq!(field_of_order(8).unwrap().r(), 3);
        assert!(field_of_order(6).is_err());
    }

    #[test]
    fn cheap_criteria_pass() {
        for k in [1, 2, 4, 11] {
            let out = run_criterion(k, Limits::default()).unwrap();
            assert!(out.pass(), "criterion {k}: {:?}", out.claims);
        }
        assert!(run_criterion(13, Limits::default()).is_err());
    }

    #[test]
    fn budget_errors_propagate() {
        let err = run_criterion(5, Limits::with_element_bound(10)).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
    }
}

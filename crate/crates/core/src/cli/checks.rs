//! Registry of named verification checks and the batch runner.

use std::error::Error;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::aut::{self, apply_endo, is_transvection, PnEndo};
use crate::braid::{self, center_element, comb, expand_to_sigma, PureBraidWord};
use crate::hom::{bn_presentation, f_subset, g_star, pn_presentation, TargetKind};
use crate::linalg::{is_zero, rat, RatVector, Subspace};
use crate::os::OsAlgebra2;
use crate::subsets::subsets_34;
use crate::tables;
use crate::word::{pure_index, Alphabet, ReducedWord};

use super::parse::parse_word;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const DEFAULT_N_MAX: usize = 5;
pub const MAX_N_MAX: usize = 7;
pub const WITNESS: &str = "[[A[1,2],A[2,3]],[A[2,3],A[3,4]]]";

type CheckFn = fn(&Context) -> Result<Verdict, Box<dyn Error + Send + Sync>>;

pub struct Check {
    pub id: &'static str,
    pub citation: &'static str,
    run: CheckFn,
}

#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub n_max: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

struct Verdict {
    status: Status,
    detail: String,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Verdict {
            status: Status::Pass,
            detail: detail.into(),
        }
    }

    /// Pass if `bad` is empty, otherwise fail listing the first few entries.
    fn from_failures(bad: Vec<String>, summary: impl Into<String>) -> Self {
        if bad.is_empty() {
            return Verdict::pass(summary);
        }
        let mut detail = bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
        if bad.len() > 5 {
            detail.push_str(&format!("; and {} more", bad.len() - 5));
        }
        Verdict {
            status: Status::Fail,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub citation: String,
    pub status: Status,
    pub millis: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub seed: u64,
    pub n_max: usize,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed() > 0)
    }

    pub fn to_text(&self, timings: bool) -> String {
        let width = self.results.iter().map(|r| r.id.len()).max().unwrap_or(0);
        let mut out = format!("seed {} n_max {}\n", self.seed, self.n_max);
        for r in &self.results {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!("{tag} {:width$}  {}", r.id, r.detail));
            if timings {
                out.push_str(&format!(" [{} ms]", r.millis));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} skipped\n",
            self.results.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("no check matches {0:?}; use --list to see the registry")]
    NoMatch(String),
    #[error("invalid filter pattern {0:?}: {1}")]
    BadPattern(String, String),
    #[error("n_max must be between 4 and {MAX_N_MAX}, got {0}")]
    BadNMax(usize),
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub n_max: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            n_max: DEFAULT_N_MAX,
            seed: DEFAULT_SEED,
            timings: false,
        }
    }
}

/// Runs every check whose id matches the glob `filter` (all when `None`).
/// Results come back in registry order; `millis` is zero unless `timings` is set.
pub fn run_checks(filter: Option<&str>, options: RunOptions) -> Result<Report, CheckError> {
    if !(4..=MAX_N_MAX).contains(&options.n_max) {
        return Err(CheckError::BadNMax(options.n_max));
    }
    let selected: Vec<&Check> = match filter {
        None => registry().iter().collect(),
        Some(f) => {
            let pattern = glob::Pattern::new(f).map_err(|e| CheckError::BadPattern(f.into(), e.to_string()))?;
            registry().iter().filter(|c| pattern.matches(c.id)).collect()
        }
    };
    if selected.is_empty() {
        return Err(CheckError::NoMatch(filter.unwrap_or("").into()));
    }
    let ctx = Context {
        n_max: options.n_max,
        seed: options.seed,
    };
    let results = selected
        .par_iter()
        .map(|check| {
            let start = Instant::now();
            let verdict = match (check.run)(&ctx) {
                Ok(v) => v,
                Err(e) => Verdict {
                    status: Status::Fail,
                    detail: format!("error: {e}"),
                },
            };
            let millis = if options.timings {
                start.elapsed().as_millis() as u64
            } else {
                0
            };
            CheckResult {
                id: check.id.into(),
                citation: check.citation.into(),
                status: verdict.status,
                millis,
                detail: verdict.detail,
            }
        })
        .collect();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        seed: options.seed,
        n_max: options.n_max,
        results,
    })
}

/// The id and statement of every registered check, in registry order.
pub fn list() -> String {
    let width = registry().iter().map(|c| c.id.len()).max().unwrap_or(0);
    registry()
        .iter()
        .map(|c| format!("{:width$}  {}\n", c.id, c.citation))
        .collect()
}

pub fn registry() -> &'static [Check] {
    macro_rules! check {
        ($id:literal, $citation:literal, $run:expr) => {
            Check {
                id: $id,
                citation: $citation,
                run: $run,
            }
        };
    }
    static REGISTRY: &[Check] = &[
        check!("pres.pn", "each relator of the standard P_n presentation is trivial in B_n", pres_pn),
        check!("pres.bn", "each braid relation of B_n is trivial under the Artin action", pres_bn),
        check!("hom.f_subsets", "f_I: P_n -> F_2 kills every relator, for all |I| in {3,4}", hom_f_subsets),
        check!(
            "alpha.factorization",
            "f_I = f_[3] o alpha_I, f_I = f_[4] o alpha_I, f_{1,2,3,n} = f_[3] o beta_n",
            alpha_factorization
        ),
        check!("tables.transvection", "f_I o psi = f_I and f_I o phi_{p,q} = f_I", tables_transvection),
        check!("tables.xi", "f_I o xi = lambda o f_I with lambda: x -> x^-1, y -> x y^-1 x^-1", tables_xi),
        check!(
            "tables.beta_k",
            "f_I o beta_k = f_{tau_k(I)}, twisted by lambda_j when k = i_j = i_{j+1} - 1",
            tables_beta_k
        ),
        check!("tables.beta_n", "f_I o beta_n in the four cases |I| in {3,4}, n in I or not", tables_beta_n),
        check!("witness.kernel", "x = [[A12,A23],[A23,A34]] lies in ker f_I for every I", witness_kernel),
        check!("witness.abelian", "x has zero exponent vector", witness_abelian),
        check!("witness.nontrivial", "x is nontrivial in P_n", witness_nontrivial),
        check!("witness.brunnian", "x is Brunnian in P_4", witness_brunnian),
        check!("center.central", "Z_n commutes with every A_{i,j}", center_central),
        check!("center.kernel", "f_I(Z_n) = 1 for every I", center_kernel),
        check!("center.automorphisms", "psi(Z_n) = Z_n^-1 and phi_{p,q}(Z_n) = Z_n", center_automorphisms),
        check!(
            "aut.endomorphisms",
            "xi, beta_k, beta_n, psi, phi_{p,q} respect every relator; attached inverses are inverse",
            aut_endomorphisms
        ),
        check!(
            "aut.transvections",
            "psi and phi_{p,q} are transvections with exponent sums -2 and 0; beta_k is not",
            aut_transvections
        ),
        check!("os.dimensions", "dim A^2 = sum_{a<b} ab over a, b in 1..n-1", os_dimensions),
        check!("os.isotropic", "every V_I is a 2-dimensional isotropic subspace", os_isotropic),
        check!("os.resonance", "nonzero elements of V_I lie in R^1; a_{1,2} does not", os_resonance),
        check!("os.pullback", "f_I^*(H^1(F_2)) = V_I", os_pullback),
        check!("os.probe", "no coordinate vector extends V_I to a larger isotropic subspace", os_probe),
        check!("gstar.composite", "f_[3] o g_* = f_[4] on P_4", gstar_composite),
        check!("comb.roundtrip", "combing the sigma-expansion of a random A-word returns an equal braid", comb_roundtrip),
    ];
    REGISTRY
}

type CheckOutput = Result<Verdict, Box<dyn Error + Send + Sync>>;

fn range_label(lo: usize, hi: usize) -> String {
    if lo == hi {
        format!("n = {lo}")
    } else {
        format!("n = {lo}..{hi}")
    }
}

fn pres_pn(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 2..=ctx.n_max {
        for r in pn_presentation(n).relators() {
            count += 1;
            if !braid::is_identity_pure(&PureBraidWord::new(n, r.clone())?)? {
                bad.push(format!("n = {n}: {r}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, format!("{count} relators, {}", range_label(2, ctx.n_max))))
}

fn pres_bn(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 2..=ctx.n_max {
        let target = TargetKind::Braid(n);
        for r in bn_presentation(n).relators() {
            count += 1;
            if !target.is_trivial(r)? {
                bad.push(format!("n = {n}: {r}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, format!("{count} relators, {}", range_label(2, ctx.n_max))))
}

fn hom_f_subsets(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 3..=ctx.n_max {
        for subset in subsets_34(n) {
            count += 1;
            if !f_subset(n, &subset)?.verify_hom()? {
                bad.push(format!("n = {n}, I = {subset:?}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, format!("{count} maps, {}", range_label(3, ctx.n_max))))
}

fn per_n(lo: usize, ctx: &Context, table: fn(usize) -> Result<Vec<String>, aut::AutError>) -> CheckOutput {
    let mut bad = Vec::new();
    for n in lo..=ctx.n_max {
        bad.extend(table(n)?.into_iter().map(|s| format!("n = {n}: {s}")));
    }
    Ok(Verdict::from_failures(bad, format!("all entries hold, {}", range_label(lo, ctx.n_max))))
}

fn alpha_factorization(ctx: &Context) -> CheckOutput {
    per_n(4, ctx, tables::alpha_witnesses)
}

fn tables_transvection(ctx: &Context) -> CheckOutput {
    per_n(4, ctx, tables::transvections)
}

fn tables_xi(ctx: &Context) -> CheckOutput {
    per_n(4, ctx, tables::xi_table)
}

fn tables_beta_k(ctx: &Context) -> CheckOutput {
    per_n(4, ctx, tables::beta_k_table)
}

fn tables_beta_n(ctx: &Context) -> CheckOutput {
    per_n(4, ctx, tables::beta_n_table)
}

pub fn witness(n: usize) -> PureBraidWord {
    let w = parse_word(WITNESS, Alphabet::Pure(n)).expect("witness parses for n >= 4");
    PureBraidWord::new(n, w).expect("pure alphabet")
}

fn witness_kernel(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 4..=ctx.n_max {
        let x = witness(n);
        for subset in subsets_34(n) {
            let image = f_subset(n, &subset)?.apply(x.word())?;
            if !image.is_identity() {
                bad.push(format!("n = {n}, I = {subset:?}: {image}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, format!("f_I(x) = 1 for all I, {}", range_label(4, ctx.n_max))))
}

fn witness_abelian(_: &Context) -> CheckOutput {
    let x = witness(4);
    let bad = if x.word().exponent_vector().is_zero() {
        vec![]
    } else {
        vec![format!("exponent vector {:?}", x.word().exponent_vector().entries())]
    };
    Ok(Verdict::from_failures(bad, format!("x has {} letters, exponent vector 0", x.word().len())))
}

fn witness_nontrivial(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 4..=ctx.n_max {
        if braid::is_identity_pure(&witness(n))? {
            bad.push(format!("x is trivial in P_{n}"));
        }
    }
    Ok(Verdict::from_failures(bad, format!("Artin action nontrivial, {}", range_label(4, ctx.n_max))))
}

fn witness_brunnian(_: &Context) -> CheckOutput {
    let bad = if braid::brunnian_check(&witness(4))? {
        vec![]
    } else {
        vec!["deleting some strand leaves a nontrivial braid".to_string()]
    };
    Ok(Verdict::from_failures(bad, "nontrivial, trivial after deleting any strand"))
}

fn generators(n: usize) -> impl Iterator<Item = (usize, usize, PureBraidWord)> {
    (1..=n).flat_map(move |i| {
        (i + 1..=n).map(move |j| (i, j, PureBraidWord::generator(n, i, j).expect("valid generator")))
    })
}

fn center_central(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 2..=ctx.n_max {
        let z = center_element(n);
        for (i, j, a) in generators(n) {
            if !braid::is_identity_pure(&z.commutator(&a)?)? {
                bad.push(format!("n = {n}: [Z, A_{i},{j}] != 1"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(2, ctx.n_max)))
}

fn center_kernel(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 3..=ctx.n_max {
        let z = center_element(n);
        for subset in subsets_34(n) {
            let image = f_subset(n, &subset)?.apply(z.word())?;
            if !image.is_identity() {
                bad.push(format!("n = {n}, I = {subset:?}: {image}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(3, ctx.n_max)))
}

type IndexedEndos = Vec<((usize, usize), PnEndo)>;

fn phis(n: usize) -> Result<IndexedEndos, aut::AutError> {
    let mut out = Vec::new();
    for p in 1..=n {
        for q in p + 1..=n {
            if (p, q) != (1, 2) {
                out.push(((p, q), aut::phi(p, q, n)?));
            }
        }
    }
    Ok(out)
}

fn center_automorphisms(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 3..=ctx.n_max {
        let z = center_element(n);
        if !braid::pure_equal(&apply_endo(&aut::psi(n)?, &z)?, &z.invert())? {
            bad.push(format!("n = {n}: psi(Z) != Z^-1"));
        }
        for ((p, q), e) in phis(n)? {
            if !braid::pure_equal(&apply_endo(&e, &z)?, &z)? {
                bad.push(format!("n = {n}: phi_{p},{q}(Z) != Z"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(3, ctx.n_max)))
}

fn aut_endomorphisms(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 4..=ctx.n_max {
        let mut named: Vec<(String, PnEndo)> = vec![
            ("xi".into(), aut::xi(n)?),
            (format!("beta_{n}"), aut::beta_n(n)?),
            ("psi".into(), aut::psi(n)?),
        ];
        for k in 1..n {
            named.push((format!("beta_{k}"), aut::beta(k, n)?));
        }
        for ((p, q), e) in phis(n)? {
            named.push((format!("phi_{p},{q}"), e));
        }
        for (name, mut e) in named {
            if !e.verify_endo()? {
                bad.push(format!("n = {n}: {name} breaks a relator"));
            }
            if e.check_inverse()? == Some(false) {
                bad.push(format!("n = {n}: {name} and its inverse do not compose to 1"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(4, ctx.n_max)))
}

fn aut_transvections(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 4..=ctx.n_max {
        let expect_sum = |name: String, e: &PnEndo, sum: i64, bad: &mut Vec<String>| -> Result<(), aut::AutError> {
            let report = is_transvection(e)?;
            if !report.is_transvection || report.exponent_sum != Some(BigInt::from(sum)) {
                bad.push(format!("n = {n}: {name} gave {report:?}"));
            }
            Ok(())
        };
        expect_sum("psi".into(), &aut::psi(n)?, -2, &mut bad)?;
        for ((p, q), e) in phis(n)? {
            expect_sum(format!("phi_{p},{q}"), &e, 0, &mut bad)?;
        }
        for k in 1..n {
            if is_transvection(&aut::beta(k, n)?)?.is_transvection {
                bad.push(format!("n = {n}: beta_{k} classified as a transvection"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(4, ctx.n_max)))
}

/// `Σ_{1 <= a < b <= n-1} ab`, the `t²` coefficient of `∏ (1 + kt)`.
pub fn os_dim2_formula(n: usize) -> usize {
    (1..n).flat_map(|a| (a + 1..n).map(move |b| a * b)).sum()
}

fn os_dimensions(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    let mut dims = Vec::new();
    for n in 2..=ctx.n_max {
        let os = OsAlgebra2::build(n);
        dims.push(os.dim2().to_string());
        if os.dim2() != os_dim2_formula(n) {
            bad.push(format!("n = {n}: dim A^2 = {}, expected {}", os.dim2(), os_dim2_formula(n)));
        }
    }
    Ok(Verdict::from_failures(bad, format!("dims {} for {}", dims.join(", "), range_label(2, ctx.n_max))))
}

fn os_isotropic(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 3..=ctx.n_max {
        let os = OsAlgebra2::build(n);
        for subset in subsets_34(n) {
            let v = os.v_subspace(&subset)?;
            if v.dim() != 2 || !os.is_isotropic(&v)? {
                bad.push(format!("n = {n}, I = {subset:?}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(3, ctx.n_max)))
}

/// A random nonzero integer combination of the basis of `v`.
pub fn random_element(v: &Subspace, rng: &mut impl Rng) -> RatVector {
    loop {
        let mut out = vec![rat(0); v.ambient()];
        for b in v.basis() {
            let c = rat(rng.gen_range(-9..=9));
            for (o, x) in out.iter_mut().zip(b) {
                *o += &c * x;
            }
        }
        if !is_zero(&out) {
            return out;
        }
    }
}

fn os_resonance(ctx: &Context) -> CheckOutput {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut bad = Vec::new();
    let mut samples = 0;
    for n in 3..=ctx.n_max {
        let os = OsAlgebra2::build(n);
        for subset in subsets_34(n) {
            let v = os.v_subspace(&subset)?;
            for _ in 0..4 {
                samples += 1;
                let a = random_element(&v, &mut rng);
                if !os.in_r1(&a)? {
                    bad.push(format!("n = {n}, I = {subset:?}: {a:?} not in R^1"));
                }
            }
        }
        if n >= 4 && os.in_r1(&os.generator(1, 2))? {
            bad.push(format!("n = {n}: a_12 in R^1"));
        }
    }
    Ok(Verdict::from_failures(bad, format!("{samples} samples, {}", range_label(3, ctx.n_max))))
}

fn os_pullback(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 3..=ctx.n_max {
        let os = OsAlgebra2::build(n);
        for subset in subsets_34(n) {
            let mut f = f_subset(n, &subset)?;
            f.verify_hom()?;
            if os.pullback_image(&f)? != os.v_subspace(&subset)? {
                bad.push(format!("n = {n}, I = {subset:?}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(3, ctx.n_max)))
}

fn os_probe(ctx: &Context) -> CheckOutput {
    let mut bad = Vec::new();
    for n in 4..=ctx.n_max {
        let os = OsAlgebra2::build(n);
        for subset in subsets_34(n) {
            let extra = os.max_isotropic_extension_probe(&subset)?;
            if !extra.is_empty() {
                bad.push(format!("n = {n}, I = {subset:?}: extends by {extra:?}"));
            }
        }
    }
    Ok(Verdict::from_failures(bad, range_label(4, ctx.n_max)))
}

fn gstar_composite(_: &Context) -> CheckOutput {
    let g = g_star()?;
    let composite = g.then(&f_subset(3, &[1, 2, 3])?)?;
    let f4 = f_subset(4, &[1, 2, 3, 4])?;
    let bad = if composite.agrees_with(&f4)? {
        vec![]
    } else {
        composite
            .images()
            .iter()
            .zip(f4.images())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(k, (a, b))| format!("generator {k}: {a} vs {b}"))
            .collect()
    };
    Ok(Verdict::from_failures(bad, "all six generators agree"))
}

/// A uniformly random A-word of length at most `max_len` in `P_n`.
pub fn random_pure_word(rng: &mut impl Rng, n: usize, max_len: usize) -> PureBraidWord {
    let alphabet = Alphabet::Pure(n);
    let len = rng.gen_range(0..=max_len);
    let mut w = ReducedWord::identity(alphabet);
    for _ in 0..len {
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let g = ReducedWord::generator(alphabet, pure_index(i, j, n)).expect("in range");
        let g = if rng.gen_bool(0.5) { g } else { g.invert() };
        w = w.multiply(&g).expect("same alphabet");
    }
    PureBraidWord::new(n, w).expect("pure alphabet")
}

fn comb_roundtrip(ctx: &Context) -> CheckOutput {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut bad = Vec::new();
    let top = ctx.n_max.min(5);
    for _ in 0..200 {
        let n = rng.gen_range(2..=top);
        let p = random_pure_word(&mut rng, n, 8);
        let combed = comb(&expand_to_sigma(&p)?)?;
        if !braid::pure_equal(&combed, &p)? {
            bad.push(format!("n = {n}: {} combed to {}", p.word(), combed.word()));
        }
    }
    Ok(Verdict::from_failures(bad, format!("200 words, n = 2..{top}, length <= 8")))
}

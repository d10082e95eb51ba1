use std::path::{Path, PathBuf};

use clap::Args;
use fitdiv::divisor::{
    int_obstruction_ideal, intersection_rank, porteous_matrix, presentation_laurent, presentation_mu,
    presentation_mu_mirror, presentation_pushout, presentation_sylvester, resultant, thom_porteous_minor,
    Divisor, DivisorPairFile,
};
use fitdiv::exterior::{check_cross, phi_determinant, phi_formula_check, phi_map, verify_phi_iso, wedge_degree, WedgeElement};
use fitdiv::fitting::{fitting_ideal, fitting_rank, PresentationDoc};
use fitdiv::gring::json::MatrixDoc;
use fitdiv::oracle::{ideal_contains, ideal_equal, invariant_lattice, invariant_subspace_dim};
use fitdiv::pkd::{
    pkd_basis, pkd_relators_det, relator_families_agree, sigma_action, vandermonde_identity_holds, verify_invariant_kernel,
    verify_pkd_rank, PkdContext, SubRing,
};
use fitdiv::universal::{
    pi_star_kills_ideal, schur_leading_term, verify_int_basis, verify_pi_split_mono, verify_ps_anchor, verify_ps_identity,
    UniversalSetup,
};
use fitdiv::{CoeffRing, GradedPoly, IdealGens, Presentation, Scalar};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::input::{override_ring, CliResult, Coeffs, DivisorSource, Source};

/// Where relative input paths are resolved.
pub struct Ctx {
    pub base: PathBuf,
}

/// The comparable part of a report and, for verifications, the verdict.
pub struct Outcome {
    pub body: Value,
    pub passed: Option<bool>,
}

impl Outcome {
    fn computed(body: Value) -> Self {
        Outcome { body, passed: None }
    }

    fn checked(mut body: Value, passed: bool) -> Self {
        body["passed"] = json!(passed);
        Outcome { body, passed: Some(passed) }
    }
}

fn to_json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn strings(ps: &[GradedPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn normalized(p: &GradedPoly) -> GradedPoly {
    let negative = p.terms().next().is_some_and(|(_, c)| *c < Scalar::from_integer(0.into()));
    if negative {
        -p
    } else {
        p.clone()
    }
}

/// Generators of `i` with zeros, sign duplicates and, for homogeneous
/// ideals, redundant members removed.
fn generators(i: &IdealGens) -> CliResult<Vec<String>> {
    let mut gens: Vec<GradedPoly> = Vec::new();
    for g in i.gens().iter().filter(|g| !g.is_zero()).map(normalized) {
        if !gens.contains(&g) {
            gens.push(g);
        }
    }
    if gens.iter().all(|g| g.is_homogeneous()) {
        let mut idx = gens.len();
        while idx > 0 {
            idx -= 1;
            let rest: Vec<GradedPoly> = gens.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, g)| g.clone()).collect();
            if ideal_contains(&IdealGens::new(i.ring(), rest)?, None, &gens[idx])? {
                gens.remove(idx);
            }
        }
    }
    Ok(strings(&gens))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairArgs {
    /// Divisor pair document (JSON or TOML)
    #[arg(long)]
    pub pair: Source<DivisorPairFile>,
    /// Replace the base coefficient ring
    #[arg(long)]
    #[serde(default)]
    pub coeffs: Option<Coeffs>,
    /// Replace the base truncation degree
    #[arg(long)]
    #[serde(default)]
    pub trunc: Option<u32>,
}

impl PairArgs {
    fn load(&self, ctx: &Ctx) -> CliResult<(Divisor, Divisor)> {
        let mut file = self.pair.load(&ctx.base)?;
        override_ring(&mut file.base, self.coeffs, self.trunc);
        Ok(file.load()?)
    }
}

pub fn divisor_intersect(ctx: &Ctx, args: &PairArgs) -> CliResult<Outcome> {
    let (d0, d1) = args.load(ctx)?;
    let mut body = Map::new();
    body.insert("inputs".into(), to_json(args));
    body.insert("intersection_rank".into(), json!(intersection_rank(&d0, &d1)?));
    for r in 1..=d0.degree().min(d1.degree()) {
        body.insert(format!("obstruction_ideal_r{r}"), json!(generators(&int_obstruction_ideal(&d0, &d1, r)?)?));
    }
    Ok(Outcome::computed(Value::Object(body)))
}

pub fn divisor_resultant(ctx: &Ctx, args: &PairArgs) -> CliResult<Outcome> {
    let (d0, d1) = args.load(ctx)?;
    let res = resultant(&d0, &d1)?;
    Ok(Outcome::computed(json!({"inputs": args, "resultant": res.to_string()})))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PorteousArgs {
    /// Divisor pair document (JSON or TOML)
    #[arg(long)]
    pub pair: Source<DivisorPairFile>,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    #[serde(default)]
    pub coeffs: Option<Coeffs>,
    #[arg(long)]
    #[serde(default)]
    pub trunc: Option<u32>,
}

/// `Ψ_r`, its determinant, and whether the determinant lies in the
/// Fitting ideal `I_r` of the intersection.
pub fn divisor_porteous(ctx: &Ctx, args: &PorteousArgs) -> CliResult<Outcome> {
    let pair = PairArgs { pair: args.pair.clone(), coeffs: args.coeffs, trunc: args.trunc };
    let (d0, d1) = pair.load(ctx)?;
    let m = porteous_matrix(&d0, &d1, args.r)?;
    let det = thom_porteous_minor(&d0, &d1, args.r)?;
    let inside = ideal_contains(&fitting_ideal(&presentation_mu(&d0, &d1)?, args.r), None, &det)?;
    let body = json!({
        "inputs": args,
        "matrix": MatrixDoc::from_matrix_text(&m),
        "minor": det.to_string(),
        "minor_in_fitting_ideal": inside,
    });
    Ok(Outcome::checked(body, inside))
}

/// All presentations of the intersection, and whether their Fitting
/// ideals agree through the truncation degree.
pub fn divisor_presentations(ctx: &Ctx, args: &PairArgs) -> CliResult<Outcome> {
    let (d0, d1) = args.load(ctx)?;
    let named: Vec<(&str, Presentation)> = vec![
        ("mu", presentation_mu(&d0, &d1)?),
        ("pushout", presentation_pushout(&d0, &d1)?),
        ("sylvester", presentation_sylvester(&d0, &d1)?),
        ("mu_mirror", presentation_mu_mirror(&d0, &d1)?),
        ("laurent", presentation_laurent(&d0, &d1)?),
    ];
    let n = d0.base().trunc();
    let mut mismatches = Vec::new();
    for j in 0..=d0.degree() + d1.degree() {
        let reference = fitting_ideal(&named[0].1, j);
        for (name, p) in &named[1..] {
            let check = ideal_equal(&fitting_ideal(p, j), &reference, None, n)?;
            if !check.holds {
                mismatches.push(json!({"presentation": name, "index": j, "degree": check.first_failing_degree}));
            }
        }
    }
    let matrices: Map<String, Value> =
        named.iter().map(|(name, p)| (name.to_string(), to_json(&MatrixDoc::from_matrix_text(p.matrix())))).collect();
    let passed = mismatches.is_empty();
    Ok(Outcome::checked(json!({"inputs": args, "presentations": matrices, "mismatches": mismatches}), passed))
}

fn six() -> u32 {
    6
}

fn just_z() -> Vec<Coeffs> {
    vec![Coeffs(CoeffRing::Integers)]
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisArgs {
    #[arg(long)]
    pub d0: usize,
    #[arg(long)]
    pub d1: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long, default_value_t = 6)]
    #[serde(default = "six")]
    pub max_degree: u32,
    /// Coefficient rings to check, comma separated
    #[arg(long, value_delimiter = ',', default_value = "Z")]
    #[serde(default = "just_z")]
    pub coeffs: Vec<Coeffs>,
}

pub fn universal_verify_basis(args: &BasisArgs) -> CliResult<Outcome> {
    let setup = UniversalSetup::new(args.d0, args.d1, args.r, args.max_degree)?;
    let coeffs: Vec<CoeffRing> = args.coeffs.iter().map(|c| c.0).collect();
    let rep = verify_int_basis(&setup, args.max_degree, &coeffs)?;
    Ok(Outcome::checked(json!({"inputs": args, "report": rep}), rep.passed))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniversalArgs {
    #[arg(long)]
    pub d0: usize,
    #[arg(long)]
    pub d1: usize,
    #[arg(long)]
    pub r: usize,
    /// Defaults to 6 for pi-star and 10 for ps-identity
    #[arg(long)]
    #[serde(default)]
    pub max_degree: Option<u32>,
}

pub fn universal_pi_star(args: &UniversalArgs) -> CliResult<Outcome> {
    let n = args.max_degree.unwrap_or(6);
    let setup = UniversalSetup::new(args.d0, args.d1, args.r, n)?;
    let kills = pi_star_kills_ideal(&setup)?;
    let rep = verify_pi_split_mono(&setup, n)?;
    let passed = kills && rep.passed;
    Ok(Outcome::checked(json!({"inputs": args, "kills_ideal": kills, "report": rep}), passed))
}

pub fn universal_ps_identity(args: &UniversalArgs) -> CliResult<Outcome> {
    let n = args.max_degree.unwrap_or(10);
    let rep = verify_ps_identity(args.d0, args.d1, args.r, n)?;
    let anchor = verify_ps_anchor(args.d0, args.d1, n);
    let passed = rep.holds && anchor.holds;
    Ok(Outcome::checked(json!({"inputs": args, "report": rep, "anchor": anchor}), passed))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchurArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
    /// Partition, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub gamma: Vec<usize>,
}

pub fn universal_schur_leading(args: &SchurArgs) -> CliResult<Outcome> {
    let (_, rep) = schur_leading_term(args.n, args.r, &args.gamma)?;
    let passed = rep.holds;
    Ok(Outcome::checked(json!({"inputs": args, "report": rep}), passed))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PkdArgs {
    /// `generic:D`, `point:D` or a divisor document
    #[arg(long)]
    pub divisor: DivisorSource,
    #[arg(long)]
    pub k: usize,
    /// Base coefficients; for `invariants`, the field of the invariants
    #[arg(long)]
    #[serde(default)]
    pub coeffs: Option<Coeffs>,
    /// Truncation of named divisors; defaults to max(6, D + 1)
    #[arg(long)]
    #[serde(default)]
    pub trunc: Option<u32>,
    /// Defaults to the truncation degree
    #[arg(long)]
    #[serde(default)]
    pub max_degree: Option<u32>,
}

fn default_trunc(d: usize) -> u32 {
    (d as u32 + 1).max(6)
}

impl PkdArgs {
    fn context(&self, ctx: &Ctx, coeffs: Option<Coeffs>) -> CliResult<(PkdContext, u32)> {
        let divisor = self.divisor.load(&ctx.base, coeffs, self.trunc, default_trunc)?;
        let pkd = PkdContext::new(&divisor, self.k)?;
        let up_to = self.max_degree.unwrap_or(pkd.ring().trunc()).min(pkd.ring().trunc());
        Ok((pkd, up_to))
    }
}

pub fn pkd_relators(ctx: &Ctx, args: &PkdArgs) -> CliResult<Outcome> {
    let (pkd, up_to) = args.context(ctx, args.coeffs)?;
    let a: Vec<Vec<String>> =
        (0..pkd.k()).map(|i| (0..pkd.d() - i).map(|j| pkd.a(i, j).to_string()).collect()).collect();
    let identities = pkd.check_identities();
    let det_agrees = pkd_relators_det(&pkd)? == pkd.relators_b();
    let vandermonde = vandermonde_identity_holds(&pkd)?;
    let families = relator_families_agree(&pkd, up_to)?;
    let passed = identities && det_agrees && vandermonde && families.holds;
    let body = json!({
        "inputs": args,
        "b": strings(pkd.relators_b()),
        "a": a,
        "division_identities": identities,
        "determinant_relators_agree": det_agrees,
        "vandermonde_identity": vandermonde,
        "relator_families_agree": families,
    });
    Ok(Outcome::checked(body, passed))
}

pub fn pkd_basis_cmd(ctx: &Ctx, args: &PkdArgs) -> CliResult<Outcome> {
    let (pkd, up_to) = args.context(ctx, args.coeffs)?;
    let ring = pkd.ring().clone();
    let basis: Vec<String> = pkd_basis(&pkd)?.iter().map(|m| ring.format_monomial(m)).collect();
    let rep = verify_pkd_rank(&pkd, up_to)?;
    let passed = rep.passed;
    Ok(Outcome::checked(json!({"inputs": args, "basis": basis, "ranks": rep}), passed))
}

/// Invariants of `Σ_k` on `O_{P_k D}` degree by degree over the chosen
/// field, with the rational count alongside; classes beyond the rational
/// count are listed under `extra`.
pub fn pkd_invariants(ctx: &Ctx, args: &PkdArgs) -> CliResult<Outcome> {
    let field = args.coeffs.map(|c| c.0).unwrap_or(CoeffRing::Rationals);
    let (pkd, up_to) = args.context(ctx, None)?;
    let ring = pkd.ring().with_coeffs(field);
    let mut rows = Vec::new();
    let mut extra = Vec::new();
    for e in 0..=up_to {
        let (basis, action) = sigma_action(&pkd, e)?;
        let (dim, dim_q, vectors) = if action.is_empty() {
            let all = basis.iter().map(|m| GradedPoly::term(&ring, m.clone(), Scalar::from_integer(1.into()))).collect();
            (basis.len(), basis.len(), all)
        } else {
            let lattice = invariant_lattice(&action, field)?;
            let vectors: Vec<GradedPoly> = lattice
                .rows()
                .iter()
                .map(|row| {
                    GradedPoly::from_terms(
                        &ring,
                        basis.iter().zip(row).map(|(m, c)| (m.clone(), Scalar::from_integer(c.clone()))),
                    )
                })
                .collect();
            (vectors.len(), invariant_subspace_dim(&action, CoeffRing::Rationals)?, vectors)
        };
        if dim > dim_q {
            extra.push(json!({"degree": e, "count": dim - dim_q}));
        }
        rows.push(json!({
            "degree": e,
            "basis": basis.iter().map(|m| ring.format_monomial(m)).collect::<Vec<_>>(),
            "invariants": dim,
            "invariants_over_Q": dim_q,
            "generators": strings(&vectors),
        }));
    }
    let body = json!({
        "inputs": args,
        "field": field.label(),
        "rows": rows,
        "total": rows.iter().map(|r| r["invariants"].as_u64().unwrap_or(0)).sum::<u64>(),
        "extra": extra,
    });
    Ok(Outcome::computed(body))
}

pub fn pkd_kernel(ctx: &Ctx, args: &PkdArgs) -> CliResult<Outcome> {
    let (pkd, up_to) = args.context(ctx, args.coeffs)?;
    let rep = verify_invariant_kernel(&pkd, up_to)?;
    let passed = rep.passed;
    Ok(Outcome::checked(json!({"inputs": args, "report": rep}), passed))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
}

pub fn exterior_check_cross(args: &CrossArgs) -> CliResult<Outcome> {
    let rep = check_cross(args.d, args.k)?;
    let passed = rep.commutes && rep.triangular && rep.mu_psi_factorial;
    Ok(Outcome::checked(json!({"inputs": args, "report": rep}), passed))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiArgs {
    /// `generic:D`, `point:D` or a divisor document
    #[arg(long)]
    pub divisor: DivisorSource,
    #[arg(long)]
    pub k: usize,
    /// Strictly decreasing exponents, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<u32>,
    #[arg(long)]
    #[serde(default)]
    pub trunc: Option<u32>,
}

/// `φ(x^β)` by reduction modulo `h`, against the determinant formula.
pub fn exterior_phi(ctx: &Ctx, args: &PhiArgs) -> CliResult<Outcome> {
    let divisor = args.divisor.load(&ctx.base, None, args.trunc, default_trunc)?;
    if args.beta.len() != args.k {
        return Err(fitdiv::AlgebraError::InvalidArgument(format!("β needs {} entries", args.k)).into());
    }
    let sub = SubRing::new(&divisor, args.k)?;
    let d = divisor.degree();
    let w = WedgeElement::basis(sub.base(), d, &args.beta)?;
    let phi = phi_map(&sub, &w)?;
    let formula = phi_determinant(&sub, d, &args.beta)?;
    let passed = phi == formula;
    let body = json!({
        "inputs": args,
        "degree": wedge_degree(&args.beta),
        "phi": phi.to_string(),
        "formula": formula.to_string(),
    });
    Ok(Outcome::checked(body, passed))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoArgs {
    /// `generic:D`, `point:D` or a divisor document
    #[arg(long)]
    pub divisor: DivisorSource,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    #[serde(default)]
    pub trunc: Option<u32>,
    #[arg(long)]
    #[serde(default)]
    pub max_degree: Option<u32>,
}

pub fn exterior_verify_iso(ctx: &Ctx, args: &IsoArgs) -> CliResult<Outcome> {
    let divisor = args.divisor.load(&ctx.base, None, args.trunc, default_trunc)?;
    let sub = SubRing::new(&divisor, args.k)?;
    let trunc = divisor.base().trunc();
    let rep = verify_phi_iso(&sub, divisor.degree(), args.max_degree.unwrap_or(trunc).min(trunc))?;
    let formula = phi_formula_check(&sub, divisor.degree())?;
    let passed = rep.passed && formula.global_sign.is_some();
    Ok(Outcome::checked(json!({"inputs": args, "report": rep, "formula": formula}), passed))
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FittingArgs {
    /// Presentation document (JSON or TOML)
    #[arg(long)]
    pub presentation: Source<PresentationDoc>,
    /// A second presentation whose Fitting ideals must agree (ideals only)
    #[arg(long)]
    #[serde(default)]
    pub against: Option<Source<PresentationDoc>>,
    #[arg(long)]
    #[serde(default)]
    pub coeffs: Option<Coeffs>,
    #[arg(long)]
    #[serde(default)]
    pub trunc: Option<u32>,
}

impl FittingArgs {
    fn load_one(&self, src: &Source<PresentationDoc>, base: &Path) -> CliResult<Presentation> {
        let mut doc = src.load(base)?;
        override_ring(&mut doc.ring, self.coeffs, self.trunc);
        Ok(doc.to_presentation()?)
    }

    fn load(&self, base: &Path) -> CliResult<Presentation> {
        self.load_one(&self.presentation, base)
    }
}

pub fn fitting_rank_cmd(ctx: &Ctx, args: &FittingArgs) -> CliResult<Outcome> {
    let p = args.load(&ctx.base)?;
    Ok(Outcome::computed(json!({"inputs": args, "generators": p.p0(), "relations": p.p1(), "rank": fitting_rank(&p)})))
}

/// `I_0, ..., I_{p0}`; with `against`, also whether every `I_j` agrees with
/// the other presentation's through the truncation degree.
pub fn fitting_ideals(ctx: &Ctx, args: &FittingArgs) -> CliResult<Outcome> {
    let p = args.load(&ctx.base)?;
    let ideals = (0..=p.p0()).map(|j| generators(&fitting_ideal(&p, j))).collect::<CliResult<Vec<_>>>()?;
    let mut body = json!({"inputs": args, "rank": fitting_rank(&p), "ideals": ideals});
    let Some(other) = &args.against else {
        return Ok(Outcome::computed(body));
    };
    let q = args.load_one(other, &ctx.base)?;
    if q.ring() != p.ring() {
        return Err(fitdiv::AlgebraError::RingMismatch.into());
    }
    let mut differ = Vec::new();
    for j in 0..=p.p0().max(q.p0()) {
        let check = ideal_equal(&fitting_ideal(&p, j), &fitting_ideal(&q, j), None, p.ring().trunc())?;
        if !check.holds {
            differ.push(json!({"index": j, "degree": check.first_failing_degree}));
        }
    }
    let passed = differ.is_empty();
    body["differences"] = json!(differ);
    Ok(Outcome::checked(body, passed))
}

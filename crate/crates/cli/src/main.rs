//! `addact`: command-line front end for additive actions on algebras,
//! hypersurfaces, toric varieties and lattice polytopes.

use std::path::Path;
use std::process::ExitCode;

use addact_core::artin::{orbit_count_projective, Algebra};
use addact_core::catalog::{named_fixture, table1, table1_entry, Fixture};
use addact_core::document::{
    algebra_document, parse_algebra_document, parse_fan_document, parse_json, parse_polytope_document,
};
use addact_core::exact::{fmt_rational, Rational};
use addact_core::ht::{
    action_names, fixed_locus, generating_subspace, ideal_from_pair, projective_action, representation, GaPair,
};
use addact_core::hyper::{
    chart_equations, chart_names, equation_names, equation_text, form_kernel, gorenstein_certificate, is_nondegenerate, reduce,
    HPair,
};
use addact_core::poly::{MonomialOrder, MultiPoly, VarNames};
use addact_core::polytope::{inscribed_in_rectangle, lattice_points, normal_fan, LatticePolytope};
use addact_core::toric::{
    complete_collections, cox_data, derivation_text, demazure_roots, has_additive_action, root_lnd,
    second_action_tuple, surface_action_count, uniqueness_check, validate_fan, Fan,
};
use addact_core::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "addact", version, about = "Additive actions on projective varieties")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Finite-dimensional algebras.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Pairs (A, U) and the objects attached to them.
    #[command(subcommand)]
    Ht(HtCmd),
    /// Hypersurfaces from pairs with U a hyperplane in the maximal ideal.
    #[command(subcommand)]
    Hyp(HypCmd),
    /// Complete toric varieties given by fans.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Lattice polytopes.
    #[command(subcommand)]
    Polytope(PolytopeCmd),
    /// The table of local algebras of dimension at most 6.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args)]
struct AlgebraArg {
    /// Algebra document (FILE) or fixture name.
    #[arg(long, visible_alias = "pair", value_name = "FILE|FIXTURE")]
    algebra: String,
}

#[derive(Args)]
struct FanArg {
    /// Fan document (FILE) or fixture name.
    #[arg(long, value_name = "FILE|FIXTURE")]
    fan: String,
}

#[derive(Args)]
struct PolytopeArg {
    /// Polytope document (FILE) or fixture name.
    #[arg(long, value_name = "FILE|FIXTURE")]
    polytope: String,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Dimension, Hilbert-Samuel sequence, socle and Gorenstein flag.
    Invariants(AlgebraArg),
    /// Number of orbits on the projectivization.
    Orbits(AlgebraArg),
    /// The normalized algebra document.
    Show(AlgebraArg),
}

#[derive(Subcommand)]
enum HtCmd {
    /// Groebner basis of the ideal I in K[S_1..S_n].
    Ideal(AlgebraArg),
    /// Basis of the generating subspace V in K[x_1..x_n].
    Subspace(AlgebraArg),
    /// Matrix of the cyclic representation in the parameters a_1..a_n.
    Representation(AlgebraArg),
    /// Action on projective space in coordinates z_0..z_{m-1}.
    Action(AlgebraArg),
    /// Fixed points: the projectivized socle.
    FixedLocus(AlgebraArg),
}

#[derive(Subcommand)]
enum HypCmd {
    /// Degree and equation of the invariant hypersurface.
    Equation(AlgebraArg),
    /// Chart equations pi(ln(1 + z)) = 0 of the orbit closure.
    Chart(AlgebraArg),
    /// Kernel of the invariant multilinear form.
    Form(AlgebraArg),
    /// Quotient by the kernel of the invariant form.
    Reduce(AlgebraArg),
    /// Gorenstein certificate for non-degeneracy.
    Certify(AlgebraArg),
}

#[derive(Subcommand)]
enum ToricCmd {
    /// Validity, completeness and smoothness.
    Validate(FanArg),
    /// Demazure roots.
    Roots(FanArg),
    /// Complete collections of roots.
    Collections(FanArg),
    /// Whether an additive action exists.
    Exists(FanArg),
    /// Number of normalized additive actions on a complete surface.
    Count(FanArg),
    /// Whether the normalized additive action is unique.
    Unique(FanArg),
    /// Class group and Cox ring degrees.
    Cox(FanArg),
    /// Homogeneous derivation of the Cox ring for every root.
    Lnd(FanArg),
    /// Two non-equivalent tuples of commuting derivations.
    SecondTuple(FanArg),
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// A vertex at which the polytope is inscribed in a rectangle.
    Inscribed(PolytopeArg),
    /// The normal fan as a fan document.
    NormalFan(PolytopeArg),
    /// Lattice points in lexicographic order.
    Points(PolytopeArg),
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// All rows.
    List,
    /// One row.
    Show {
        /// Row number, 1 to 42.
        id: usize,
    },
}

/// Text and JSON renderings of one result.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json }
    }
}

/// An algebra input: the document form, or a fixture.
enum AlgebraInput {
    Document { algebra: Algebra, u_basis: Option<Vec<Vec<Rational>>>, complement: Option<Vec<Rational>> },
    Pair(GaPair),
    HPair(HPair),
}

fn read_document(arg: &str) -> Result<Option<Value>> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")))?;
    parse_json(&text).map(Some)
}

fn load_algebra(arg: &str) -> Result<AlgebraInput> {
    if let Some(v) = read_document(arg)? {
        let doc = parse_algebra_document(&v)?;
        return Ok(AlgebraInput::Document { algebra: doc.algebra, u_basis: doc.u_basis, complement: doc.complement });
    }
    match named_fixture(arg)? {
        Fixture::Pair(p) => Ok(AlgebraInput::Pair(p)),
        Fixture::HPair(h) => Ok(AlgebraInput::HPair(h)),
        _ => Err(Error::InvalidInput(format!("{arg} is not an algebra fixture"))),
    }
}

impl AlgebraInput {
    fn algebra(&self) -> &Algebra {
        match self {
            AlgebraInput::Document { algebra, .. } => algebra,
            AlgebraInput::Pair(p) => p.algebra(),
            AlgebraInput::HPair(h) => h.algebra(),
        }
    }

    fn u_basis(&self) -> Option<&[Vec<Rational>]> {
        match self {
            AlgebraInput::Document { u_basis, .. } => u_basis.as_deref(),
            AlgebraInput::Pair(p) => Some(p.u_basis()),
            AlgebraInput::HPair(h) => Some(h.pair().u_basis()),
        }
    }

    /// The pair, with `U = m` when no U-basis is given.
    fn pair(self) -> Result<GaPair> {
        match self {
            AlgebraInput::Document { algebra, u_basis: Some(u), .. } => GaPair::new(algebra, u),
            AlgebraInput::Document { algebra, u_basis: None, .. } => GaPair::maximal(algebra),
            AlgebraInput::Pair(p) => Ok(p),
            AlgebraInput::HPair(h) => Ok(h.pair().clone()),
        }
    }

    fn hpair(self) -> Result<HPair> {
        match self {
            AlgebraInput::HPair(h) => Ok(h),
            AlgebraInput::Document { algebra, u_basis, complement } => {
                let u = u_basis.ok_or_else(|| Error::InvalidInput("an H-pair needs a u_basis".into()))?;
                HPair::new(GaPair::new(algebra, u)?, complement)
            }
            AlgebraInput::Pair(p) => HPair::new(p, None),
        }
    }
}

fn load_fan(arg: &str) -> Result<Fan> {
    if let Some(v) = read_document(arg)? {
        return parse_fan_document(&v);
    }
    match named_fixture(arg)? {
        Fixture::Fan(f) => Ok(f),
        Fixture::Polytope(p) => Ok(normal_fan(&p)),
        _ => Err(Error::InvalidInput(format!("{arg} is not a fan fixture"))),
    }
}

fn load_polytope(arg: &str) -> Result<LatticePolytope> {
    if let Some(v) = read_document(arg)? {
        return parse_polytope_document(&v);
    }
    match named_fixture(arg)? {
        Fixture::Polytope(p) => Ok(p),
        _ => Err(Error::InvalidInput(format!("{arg} is not a polytope fixture"))),
    }
}

fn poly_text(f: &MultiPoly, names: &VarNames) -> String {
    f.to_text(MonomialOrder::GrLex, names)
}

fn vector_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_rational).collect();
    format!("({})", parts.join(", "))
}

fn int_vector_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

/// An element as a polynomial in the presentation variables when there is
/// one, otherwise as a coordinate vector.
fn element_text(a: &Algebra, x: &[Rational]) -> String {
    match (a.presentation(), a.poly_of_element(x)) {
        (Some(p), Some(f)) => poly_text(&f, &VarNames::indexed("S", 1, p.nvars())),
        _ => vector_text(x),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn lines(items: &[String]) -> String {
    items.join("\n")
}

fn bool_output(b: bool) -> Output {
    Output::new(b.to_string(), Value::Bool(b))
}

fn run_algebra(cmd: AlgebraCmd) -> Result<Output> {
    match cmd {
        AlgebraCmd::Invariants(arg) => {
            let inv = load_algebra(&arg.algebra)?.algebra().invariants()?;
            let hs: Vec<String> = inv.hilbert_samuel.iter().map(usize::to_string).collect();
            let text = format!(
                "dim: {}\nlocal: {}\nlocal summands: {}\nhilbert-samuel: ({})\nsocle dim: {}\ngorenstein: {}\nnilpotency index: {}",
                inv.dim,
                inv.is_local,
                inv.num_local_summands,
                hs.join(", "),
                inv.socle_dim,
                inv.is_gorenstein,
                inv.nilpotency_index
            );
            Ok(Output::new(text, to_json(&inv)))
        }
        AlgebraCmd::Orbits(arg) => {
            let count = orbit_count_projective(load_algebra(&arg.algebra)?.algebra())?;
            let text = match count {
                addact_core::artin::OrbitCount::Finite(k) => k.to_string(),
                addact_core::artin::OrbitCount::Infinite => "infinite".into(),
            };
            Ok(Output::new(text, to_json(&count)))
        }
        AlgebraCmd::Show(arg) => {
            let input = load_algebra(&arg.algebra)?;
            let doc = algebra_document(input.algebra(), input.u_basis());
            Ok(Output::new(serde_json::to_string_pretty(&doc).expect("serializable"), doc))
        }
    }
}

fn run_ht(cmd: HtCmd) -> Result<Output> {
    match cmd {
        HtCmd::Ideal(arg) => {
            let p = load_algebra(&arg.algebra)?.pair()?;
            let gb = ideal_from_pair(&p)?;
            let text = gb.to_text(&VarNames::indexed("S", 1, p.n()));
            Ok(Output::new(lines(&text), json!({ "variables": p.n(), "generators": text })))
        }
        HtCmd::Subspace(arg) => {
            let p = load_algebra(&arg.algebra)?.pair()?;
            let text = generating_subspace(&p).to_text(&VarNames::indexed("x", 1, p.n()));
            Ok(Output::new(lines(&text), json!({ "variables": p.n(), "basis": text })))
        }
        HtCmd::Representation(arg) => {
            let p = load_algebra(&arg.algebra)?.pair()?;
            let rows = representation(&p).to_text(&VarNames::indexed("a", 1, p.n()));
            let text: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
            Ok(Output::new(lines(&text), json!({ "matrix": rows })))
        }
        HtCmd::Action(arg) => {
            let p = load_algebra(&arg.algebra)?.pair()?;
            let names = action_names(p.n(), p.algebra().dim());
            let coords: Vec<String> = projective_action(&p)?.iter().map(|f| poly_text(f, &names)).collect();
            let orbits = orbit_count_projective(p.algebra())?;
            Ok(Output::new(format!("[{}]", coords.join(" : ")), json!({ "action": coords, "orbits": orbits })))
        }
        HtCmd::FixedLocus(arg) => {
            let input = load_algebra(&arg.algebra)?;
            let a = input.algebra();
            let socle = fixed_locus(a)?;
            let basis: Vec<String> = socle.basis().iter().map(|x| element_text(a, x)).collect();
            let text = format!("socle dim {}\n{}", socle.dim(), lines(&basis)).trim_end().to_string();
            Ok(Output::new(text, json!({ "dim": socle.dim(), "basis": basis })))
        }
    }
}

fn run_hyp(cmd: HypCmd) -> Result<Output> {
    match cmd {
        HypCmd::Equation(arg) => {
            let h = load_algebra(&arg.algebra)?.hpair()?;
            let eq = equation_text(&h);
            let names = equation_names(h.pair().n());
            let vars: Vec<&str> = (0..names.len()).map(|i| names.name(i)).collect();
            Ok(Output::new(
                format!("degree {}\n{}", h.degree(), eq),
                json!({ "degree": h.degree(), "variables": vars, "equation": eq }),
            ))
        }
        HypCmd::Chart(arg) => {
            let p = load_algebra(&arg.algebra)?.pair()?;
            let names = chart_names(p.algebra().dim());
            let eqs: Vec<String> = chart_equations(&p)?.iter().map(|f| poly_text(f, &names)).collect();
            Ok(Output::new(lines(&eqs), json!({ "equations": eqs })))
        }
        HypCmd::Form(arg) => {
            let h = load_algebra(&arg.algebra)?.hpair()?;
            let kernel = form_kernel(&h);
            let basis: Vec<String> = kernel.basis().iter().map(|x| element_text(h.algebra(), x)).collect();
            let text = format!("degree {}\nkernel dim {}\n{}", h.degree(), kernel.dim(), lines(&basis));
            Ok(Output::new(
                text.trim_end(),
                json!({ "degree": h.degree(), "kernel_dim": kernel.dim(), "kernel": basis }),
            ))
        }
        HypCmd::Reduce(arg) => {
            let h = load_algebra(&arg.algebra)?.hpair()?;
            let r = reduce(&h)?;
            let eq = equation_text(&r.pair);
            let doc = algebra_document(r.pair.algebra(), Some(r.pair.pair().u_basis()));
            let kept: Vec<String> = r.kept_u.iter().map(usize::to_string).collect();
            Ok(Output::new(
                format!("kernel dim {}\nkept u ({})\n{}", r.kernel_dim, kept.join(", "), eq),
                json!({ "kernel_dim": r.kernel_dim, "kept_u": r.kept_u, "equation": eq, "pair": doc }),
            ))
        }
        HypCmd::Certify(arg) => {
            let h = load_algebra(&arg.algebra)?.hpair()?;
            let certified = gorenstein_certificate(&h)?;
            let nondegenerate = is_nondegenerate(&h);
            Ok(Output::new(
                format!("gorenstein certificate: {certified}\nnondegenerate: {nondegenerate}"),
                json!({ "gorenstein_certificate": certified, "nondegenerate": nondegenerate }),
            ))
        }
    }
}

fn run_toric(cmd: ToricCmd) -> Result<Output> {
    match cmd {
        ToricCmd::Validate(arg) => {
            let report = validate_fan(&load_fan(&arg.fan)?)?;
            let text = format!(
                "valid: {}\ncomplete: {}\nsmooth: {}",
                report.is_valid, report.is_complete, report.is_smooth
            );
            Ok(Output::new(text, to_json(&report)))
        }
        ToricCmd::Roots(arg) => {
            let roots = demazure_roots(&load_fan(&arg.fan)?)?;
            let text: Vec<String> = roots.iter().map(|r| format!("ray {}: {}", r.ray, int_vector_text(&r.e))).collect();
            Ok(Output::new(lines(&text), to_json(&roots)))
        }
        ToricCmd::Collections(arg) => {
            let cols = complete_collections(&load_fan(&arg.fan)?)?;
            let text: Vec<String> = cols
                .iter()
                .map(|c| {
                    let rays: Vec<String> = c.basis_rays.iter().map(usize::to_string).collect();
                    let roots: Vec<String> = c.roots.iter().map(|e| int_vector_text(e)).collect();
                    format!("rays ({}): {}", rays.join(", "), roots.join(" "))
                })
                .collect();
            Ok(Output::new(lines(&text), to_json(&cols)))
        }
        ToricCmd::Exists(arg) => Ok(bool_output(has_additive_action(&load_fan(&arg.fan)?)?)),
        ToricCmd::Count(arg) => {
            let n = surface_action_count(&load_fan(&arg.fan)?)?;
            Ok(Output::new(n.to_string(), json!(n)))
        }
        ToricCmd::Unique(arg) => Ok(bool_output(uniqueness_check(&load_fan(&arg.fan)?)?)),
        ToricCmd::Cox(arg) => {
            let cox = cox_data(&load_fan(&arg.fan)?)?;
            let mut group = vec!["Z".to_string(); cox.free_rank].join(" + ");
            for t in &cox.torsion {
                group = if group.is_empty() { format!("Z/{t}") } else { format!("{group} + Z/{t}") };
            }
            if group.is_empty() {
                group = "0".into();
            }
            let mut text = vec![format!("class group: {group}")];
            for (i, var) in cox.variables.iter().enumerate() {
                let mut deg = int_vector_text(&cox.degrees[i]);
                if !cox.torsion.is_empty() {
                    deg = format!("{deg} {}", int_vector_text(&cox.torsion_degrees[i]));
                }
                text.push(format!("deg {var} = {deg}"));
            }
            Ok(Output::new(lines(&text), to_json(&cox)))
        }
        ToricCmd::Lnd(arg) => {
            let f = load_fan(&arg.fan)?;
            let mut text = Vec::new();
            let mut out = Vec::new();
            for r in demazure_roots(&f)? {
                let d = root_lnd(&f, &r)?;
                text.push(format!("ray {} {}: {}", r.ray, int_vector_text(&r.e), d.to_text()));
                out.push(json!({ "ray": r.ray, "e": r.e, "lnd": d.to_text() }));
            }
            Ok(Output::new(lines(&text), Value::Array(out)))
        }
        ToricCmd::SecondTuple(arg) => {
            let t = second_action_tuple(&load_fan(&arg.fan)?)?;
            let normalized: Vec<String> = t.normalized.iter().map(|s| derivation_text(s)).collect();
            let perturbed: Vec<String> = t.perturbed.iter().map(|s| derivation_text(s)).collect();
            let text = format!(
                "i = {}, j = {}, d = {}\nnormalized: {}\nperturbed: {}",
                t.i,
                t.j,
                t.d,
                normalized.join(", "),
                perturbed.join(", ")
            );
            let json = json!({
                "basis_rays": t.basis_rays, "i": t.i, "j": t.j, "d": t.d,
                "normalized": normalized, "perturbed": perturbed,
            });
            Ok(Output::new(text, json))
        }
    }
}

fn run_polytope(cmd: PolytopeCmd) -> Result<Output> {
    match cmd {
        PolytopeCmd::Inscribed(arg) => {
            let v = inscribed_in_rectangle(&load_polytope(&arg.polytope)?);
            let text = v.as_deref().map_or_else(|| "none".to_string(), int_vector_text);
            Ok(Output::new(text, json!({ "inscribed": v.is_some(), "vertex": v })))
        }
        PolytopeCmd::NormalFan(arg) => {
            let fan = normal_fan(&load_polytope(&arg.polytope)?);
            let doc = to_json(&fan);
            Ok(Output::new(serde_json::to_string_pretty(&doc).expect("serializable"), doc))
        }
        PolytopeCmd::Points(arg) => {
            let pts = lattice_points(&load_polytope(&arg.polytope)?);
            let text: Vec<String> = pts.iter().map(|p| int_vector_text(p)).collect();
            Ok(Output::new(lines(&text), json!(pts)))
        }
    }
}

fn run_catalog(cmd: CatalogCmd) -> Result<Output> {
    let row = |e: &addact_core::catalog::CatalogEntry| {
        let hs: Vec<String> = e.hilbert_samuel.iter().map(usize::to_string).collect();
        format!(
            "{:>2}  {}  dim {}  ({})  {}",
            e.id,
            e.presentation_text(),
            e.dim,
            hs.join(", "),
            if e.gorenstein { "gorenstein" } else { "-" }
        )
    };
    match cmd {
        CatalogCmd::List => {
            let rows = table1();
            let text: Vec<String> = rows.iter().map(row).collect();
            Ok(Output::new(lines(&text), to_json(&rows)))
        }
        CatalogCmd::Show { id } => {
            let e = table1_entry(id)?;
            Ok(Output::new(row(&e), to_json(&e)))
        }
    }
}

fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Algebra(c) => run_algebra(c),
        Command::Ht(c) => run_ht(c),
        Command::Hyp(c) => run_hyp(c),
        Command::Toric(c) => run_toric(c),
        Command::Polytope(c) => run_polytope(c),
        Command::Catalog(c) => run_catalog(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            ExitCode::from(if e.is_malformed_input() { 2 } else { 1 })
        }
    }
}

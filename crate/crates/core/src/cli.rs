//! The `golodlab` command line.

use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{full_report, is_tight, ReportOptions, TightnessOptions};
use crate::catalog::{catalog_complex, catalog_entries};
use crate::dga::{hochster_cohomology, verify_phi_iso, weak_golod_check, ClassRef, HochsterTable};
use crate::error::{Error, Result};
use crate::field::{scalar_to_json, Field, Scalar};
use crate::homology::{homology, Cochain, Flavor};
use crate::io::{emit_complex, parse_complex, ComplexFormat};
use crate::massey::{construct_golod_certificate, triple_massey_exact, triple_massey_randomized, CertificateOptions};
use crate::partition::{ordered_partitions, VertexPartition};
use crate::prism::{prism_lemma_residual, random_homotopy, verify_boundary_identity, verify_boundary_identity_i, PrismOperator};
use crate::report::{to_json, Report, SCHEMA_VERSION, TOOL_VERSION};
use crate::simplicial::{mask_indices, FaceMask, SimplicialComplex};

#[derive(Parser, Debug)]
#[command(name = "golodlab", version, about = "Tightness, Massey products and Golod certificates for simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Coefficient field: q, f2, f3, f<p>. Repeatable for `report`.
    #[arg(long = "field", global = true)]
    fields: Vec<String>,
    #[arg(long, global = true, default_value = "unreduced")]
    flavor: String,
    #[arg(long, global = true, default_value_t = 3)]
    max_arity: usize,
    /// json or text.
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; falls back to GOLODLAB_JOBS.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Use a catalog complex instead of an input file.
    #[arg(long, global = true)]
    catalog: Option<String>,
    /// facet-lines or facet-json; by default inferred from the extension.
    #[arg(long, global = true)]
    input_format: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    Homology { input: Option<PathBuf> },
    Tight {
        input: Option<PathBuf>,
        #[arg(long)]
        require_connected: bool,
        #[arg(long)]
        full_table: bool,
    },
    WeakGolod { input: Option<PathBuf> },
    CertifyGolod { input: Option<PathBuf> },
    /// Triple product of three basis classes, each given as
    /// `LABELS[@DEGREE[/INDEX]]`, e.g. `1,4@0`.
    MasseyTriple {
        input: Option<PathBuf>,
        #[arg(long = "class", num_args = 1)]
        classes: Vec<String>,
        #[arg(long, default_value_t = 10)]
        rerandomize: usize,
    },
    Report { input: Option<PathBuf> },
    /// Lists the catalog, or prints one entry with `--catalog NAME`.
    Catalog,
    VerifyIdentities {
        input: Option<PathBuf>,
        /// Random homotopies per field.
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
}

enum Output {
    Json(String),
    Text(String),
}

fn field_list(opts: &Common, default: &[Field]) -> Result<Vec<Field>> {
    if opts.fields.is_empty() {
        return Ok(default.to_vec());
    }
    opts.fields.iter().map(|f| f.parse()).collect()
}

fn one_field(opts: &Common) -> Result<Field> {
    match opts.fields.as_slice() {
        [] => Ok(Field::Q),
        [f] => f.parse(),
        _ => Err(Error::domain("this command takes a single --field")),
    }
}

fn load(opts: &Common, input: &Option<PathBuf>) -> Result<(String, SimplicialComplex)> {
    match (input, &opts.catalog) {
        (Some(_), Some(_)) => Err(Error::domain("give either an input file or --catalog, not both")),
        (None, None) => Err(Error::domain("missing input: give a file or --catalog NAME")),
        (None, Some(name)) => Ok((name.clone(), catalog_complex(name)?)),
        (Some(path), None) => {
            let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let format = match &opts.input_format {
                Some(f) => f.parse()?,
                None => ComplexFormat::from_path(path),
            };
            let file = parse_complex(&bytes, format)?;
            let name = file.name.unwrap_or_else(|| {
                path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
            });
            Ok((name, file.complex))
        }
    }
}

fn labels(k: &SimplicialComplex, m: FaceMask) -> Vec<String> {
    mask_indices(m).into_iter().map(|i| k.vertices()[i].to_string()).collect()
}

fn scalars(v: &[Scalar]) -> Vec<serde_json::Value> {
    v.iter().map(scalar_to_json).collect()
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    name: String,
    #[serde(flatten)]
    body: T,
    tool_version: &'static str,
    schema_version: u32,
}

fn emit<T: Serialize>(name: &str, body: T, text: String, opts: &Common) -> Output {
    if opts.format == "text" {
        Output::Text(text)
    } else {
        Output::Json(to_json(&Envelope {
            name: name.to_string(),
            body,
            tool_version: TOOL_VERSION,
            schema_version: SCHEMA_VERSION,
        }))
    }
}

#[derive(Serialize)]
struct HomologyOut {
    field: String,
    flavor: String,
    f_vector: Vec<usize>,
    betti: Vec<usize>,
}

fn cmd_homology(opts: &Common, input: &Option<PathBuf>) -> Result<Output> {
    let (name, k) = load(opts, input)?;
    let field = one_field(opts)?;
    let flavor: Flavor = opts.flavor.parse()?;
    let betti = homology(&k, field, flavor).betti();
    let text = format!("{name}: betti {betti:?} over {field} ({flavor})\n");
    let body = HomologyOut {
        field: field.to_string(),
        flavor: flavor.to_string(),
        f_vector: k.f_vector(),
        betti,
    };
    Ok(emit(&name, body, text, opts))
}

#[derive(Serialize)]
struct SubsetRow {
    subset: Vec<String>,
    injective: bool,
}

#[derive(Serialize)]
struct TightOut {
    field: String,
    flavor: String,
    require_connected: bool,
    tight: bool,
    witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<Vec<SubsetRow>>,
}

fn cmd_tight(opts: &Common, input: &Option<PathBuf>, require_connected: bool, full_table: bool) -> Result<Output> {
    let (name, k) = load(opts, input)?;
    let field = one_field(opts)?;
    let flavor: Flavor = opts.flavor.parse()?;
    let r = is_tight(
        &k,
        field,
        TightnessOptions {
            flavor,
            require_connected,
            full_table,
        },
    )?;
    let witness = r.witness.map(|w| labels(&k, w));
    let mut text = format!("{name}: {} over {field} ({flavor})", if r.tight { "tight" } else { "not tight" });
    if let Some(w) = &witness {
        text.push_str(&format!(", witness {{{}}}", w.join(",")));
    }
    text.push('\n');
    let body = TightOut {
        field: field.to_string(),
        flavor: flavor.to_string(),
        require_connected,
        tight: r.tight,
        witness,
        table: full_table.then(|| {
            r.table
                .iter()
                .map(|&(u, ok)| SubsetRow {
                    subset: labels(&k, u),
                    injective: ok,
                })
                .collect()
        }),
    };
    Ok(emit(&name, body, text, opts))
}

#[derive(Serialize)]
struct ClassOut {
    support: Vec<String>,
    reduced_degree: isize,
    index: usize,
}

fn class_out(k: &SimplicialComplex, c: ClassRef) -> ClassOut {
    ClassOut {
        support: labels(k, c.subset),
        reduced_degree: c.reduced_degree,
        index: c.index,
    }
}

#[derive(Serialize)]
struct ProductOut {
    left: ClassOut,
    right: ClassOut,
    product: Vec<serde_json::Value>,
}

#[derive(Serialize)]
struct WeakGolodOut {
    field: String,
    weakly_golod: bool,
    pairs_checked: usize,
    witness: Option<ProductOut>,
}

fn cmd_weak_golod(opts: &Common, input: &Option<PathBuf>) -> Result<Output> {
    let (name, k) = load(opts, input)?;
    let field = one_field(opts)?;
    let table = hochster_cohomology(&k, field)?;
    let r = weak_golod_check(&k, &table)?;
    let mut text = format!(
        "{name}: {} over {field} ({} products checked)",
        if r.weakly_golod { "weakly golod" } else { "not weakly golod" },
        r.pairs_checked
    );
    if let Some(w) = &r.witness {
        text.push_str(&format!(
            ", witness {{{}}} x {{{}}}",
            labels(&k, w.left.subset).join(","),
            labels(&k, w.right.subset).join(",")
        ));
    }
    text.push('\n');
    let body = WeakGolodOut {
        field: field.to_string(),
        weakly_golod: r.weakly_golod,
        pairs_checked: r.pairs_checked,
        witness: r.witness.map(|w| ProductOut {
            left: class_out(&k, w.left),
            right: class_out(&k, w.right),
            product: scalars(&w.product),
        }),
    };
    Ok(emit(&name, body, text, opts))
}

#[derive(Serialize)]
struct TermOut {
    subset: Vec<String>,
    face: Vec<String>,
    coefficient: serde_json::Value,
}

#[derive(Serialize)]
struct SystemEntryOut {
    i: usize,
    j: usize,
    terms: Vec<TermOut>,
}

#[derive(Serialize)]
struct CertEntryOut {
    support: Vec<String>,
    parts: Vec<Vec<String>>,
    classes: Vec<ClassOut>,
    defining_system: bool,
    representative_is_coboundary: bool,
    decomposition: Option<bool>,
    b: Vec<SystemEntryOut>,
}

#[derive(Serialize)]
struct CertificateOut {
    field: String,
    max_arity: usize,
    verified: bool,
    partitions_checked: usize,
    vacuous_partitions: usize,
    entries: Vec<CertEntryOut>,
}

fn cmd_certify(opts: &Common, input: &Option<PathBuf>) -> Result<Output> {
    let (name, k) = load(opts, input)?;
    let field = one_field(opts)?;
    let table = hochster_cohomology(&k, field)?;
    let cert = construct_golod_certificate(
        &k,
        &table,
        CertificateOptions {
            max_arity: opts.max_arity,
            ..Default::default()
        },
    )?;
    let entries: Vec<CertEntryOut> = cert
        .entries
        .iter()
        .map(|e| {
            // b lives in the vertex indexing of K_U
            let local = |m: FaceMask| labels(&k, crate::simplicial::expand_mask(m, e.support));
            CertEntryOut {
                support: labels(&k, e.support),
                parts: e.parts.iter().map(|&p| labels(&k, p)).collect(),
                classes: e.classes.iter().map(|&c| class_out(&k, c)).collect(),
                defining_system: e.checks.defining_system,
                representative_is_coboundary: e.checks.representative_is_coboundary,
                decomposition: e.checks.decomposition,
                b: e
                    .b
                    .entries
                    .iter()
                    .map(|(&(i, j), x)| SystemEntryOut {
                        i,
                        j,
                        terms: x
                            .terms
                            .iter()
                            .map(|(&(s, f), c)| TermOut {
                                subset: local(s),
                                face: local(f),
                                coefficient: scalar_to_json(c),
                            })
                            .collect(),
                    })
                    .collect(),
            }
        })
        .collect();
    let text = format!(
        "{name}: golod certificate over {field} verified, max arity {}, {} entries, {} partitions ({} vacuous)\n",
        cert.max_arity,
        entries.len(),
        cert.partitions_checked,
        cert.vacuous_partitions
    );
    let body = CertificateOut {
        field: field.to_string(),
        max_arity: cert.max_arity,
        verified: cert.all_verified(),
        partitions_checked: cert.partitions_checked,
        vacuous_partitions: cert.vacuous_partitions,
        entries,
    };
    Ok(emit(&name, body, text, opts))
}

/// `LABELS[@DEGREE[/INDEX]]`; without a degree the lowest degree with a class is used.
fn parse_class(k: &SimplicialComplex, table: &HochsterTable, spec: &str) -> Result<ClassRef> {
    let (labels_part, rest) = match spec.split_once('@') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let labels: Vec<crate::simplicial::VertexLabel> = labels_part
        .split(',')
        .map(|t| {
            let path = t
                .trim()
                .split(':')
                .map(|p| p.parse::<u32>().map_err(|_| Error::domain(format!("bad vertex label in {spec:?}"))))
                .collect::<Result<Vec<_>>>()?;
            crate::simplicial::VertexLabel::new(path)
        })
        .collect::<Result<_>>()?;
    let subset = k.mask_of_labels(&labels)?;
    let classes = table.classes(subset);
    let (degree, index) = match rest {
        None => (None, 0),
        Some(r) => {
            let (d, i) = match r.split_once('/') {
                Some((d, i)) => (d, i.parse::<usize>().map_err(|_| Error::domain(format!("bad class index in {spec:?}")))?),
                None => (r, 0),
            };
            (Some(d.parse::<isize>().map_err(|_| Error::domain(format!("bad degree in {spec:?}")))?), i)
        }
    };
    let degree = match degree {
        Some(d) => d,
        None => classes
            .first()
            .map(|c| c.reduced_degree)
            .ok_or_else(|| Error::domain(format!("no cohomology supported on {labels_part}")))?,
    };
    classes
        .into_iter()
        .find(|c| c.reduced_degree == degree && c.index == index)
        .ok_or_else(|| Error::domain(format!("no basis class {spec:?}")))
}

#[derive(Serialize)]
struct TripleOut {
    field: String,
    classes: Vec<ClassOut>,
    defined: bool,
    total_degree: usize,
    target_dim: usize,
    indeterminacy_dim: usize,
    coset: Vec<serde_json::Value>,
    trivial: bool,
    rerandomizations: usize,
    stable: bool,
}

fn cmd_triple(opts: &Common, input: &Option<PathBuf>, specs: &[String], rerandomize: usize) -> Result<Output> {
    let (name, k) = load(opts, input)?;
    let field = one_field(opts)?;
    if specs.len() != 3 {
        return Err(Error::domain("give exactly three --class arguments"));
    }
    let table = hochster_cohomology(&k, field)?;
    let cls = [
        parse_class(&k, &table, &specs[0])?,
        parse_class(&k, &table, &specs[1])?,
        parse_class(&k, &table, &specs[2])?,
    ];
    let out = triple_massey_exact(&k, &table, cls)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut stable = true;
    if out.defined {
        for _ in 0..rerandomize {
            stable &= triple_massey_randomized(&k, &table, cls, &mut rng)? == out;
        }
    }
    let verdict = if !out.defined {
        "not defined"
    } else if out.trivial {
        "contains zero"
    } else {
        "nontrivial"
    };
    let text = format!(
        "{name}: triple product over {field} {verdict} (degree {}, indeterminacy {}/{}, stable under {rerandomize} re-randomizations: {stable})\n",
        out.total_degree, out.indeterminacy_dim, out.target_dim
    );
    let body = TripleOut {
        field: field.to_string(),
        classes: cls.iter().map(|&c| class_out(&k, c)).collect(),
        defined: out.defined,
        total_degree: out.total_degree,
        target_dim: out.target_dim,
        indeterminacy_dim: out.indeterminacy_dim,
        coset: scalars(&out.coset),
        trivial: out.trivial,
        rerandomizations: rerandomize,
        stable,
    };
    Ok(emit(&name, body, text, opts))
}

fn cmd_report(opts: &Common, input: &Option<PathBuf>) -> Result<Output> {
    let (name, k) = load(opts, input)?;
    let fields = field_list(opts, &[Field::Q, Field::F2])?;
    let r = Report::new(
        &name,
        full_report(
            &k,
            &fields,
            ReportOptions {
                max_arity: opts.max_arity,
                certificate: true,
            },
        )?,
    );
    Ok(if opts.format == "text" {
        Output::Text(r.to_text())
    } else {
        Output::Json(to_json(&r))
    })
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    description: String,
    f_vector: Vec<usize>,
    euler: i64,
    betti_q: Vec<usize>,
    betti_f2: Vec<usize>,
    orientable: bool,
}

#[derive(Serialize)]
struct CatalogOut {
    entries: Vec<CatalogRow>,
    tool_version: &'static str,
    schema_version: u32,
}

fn cmd_catalog(opts: &Common) -> Result<Output> {
    if let Some(name) = &opts.catalog {
        let k = catalog_complex(name)?;
        let fmt = if opts.format == "text" {
            ComplexFormat::FacetLines
        } else {
            ComplexFormat::FacetJson
        };
        let s = emit_complex(&k, Some(name), fmt);
        return Ok(if opts.format == "text" { Output::Text(s) } else { Output::Json(s) });
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    for e in catalog_entries() {
        let k = e.load()?;
        text.push_str(&format!("{:<20} {}\n", e.name, e.description));
        rows.push(CatalogRow {
            name: e.name,
            description: e.description,
            f_vector: k.f_vector(),
            euler: e.expectations.euler,
            betti_q: e.expectations.betti_q,
            betti_f2: e.expectations.betti_f2,
            orientable: e.expectations.orientable,
        });
    }
    Ok(if opts.format == "text" {
        Output::Text(text)
    } else {
        Output::Json(to_json(&CatalogOut {
            entries: rows,
            tool_version: TOOL_VERSION,
            schema_version: SCHEMA_VERSION,
        }))
    })
}

#[derive(Serialize)]
struct IdentityRow {
    check: &'static str,
    complex: String,
    field: String,
    cases: usize,
    failures: usize,
}

#[derive(Serialize)]
struct IdentitiesOut {
    seed: u64,
    checks: Vec<IdentityRow>,
    all_zero: bool,
}

fn random_cochain<R: Rng>(k: &SimplicialComplex, field: Field, subset: FaceMask, rng: &mut R) -> Cochain {
    let faces: Vec<FaceMask> = k.all_faces().filter(|&f| f != 0 && f & !subset == 0).collect();
    let card = faces[rng.gen_range(0..faces.len())].count_ones();
    let mut c = Cochain::zero(field, card as isize - 1);
    for f in faces.into_iter().filter(|f| f.count_ones() == card) {
        crate::homology::sparse_add(&mut c.terms, f, field.from_i64(rng.gen_range(-2..=2)));
    }
    c
}

fn cmd_identities(opts: &Common, input: &Option<PathBuf>, rounds: usize) -> Result<Output> {
    let complexes: Vec<(String, SimplicialComplex)> = if input.is_some() || opts.catalog.is_some() {
        vec![load(opts, input)?]
    } else {
        catalog_entries()
            .into_iter()
            .filter(|e| e.facets.iter().flatten().max().copied().unwrap_or(0) <= 6)
            .map(|e| Ok((e.name.clone(), e.load()?)))
            .collect::<Result<_>>()?
    };
    let fields = field_list(opts, &[Field::F2, Field::F3, Field::Q])?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut rows = Vec::new();
    for (name, k) in &complexes {
        let k = Arc::new(k.clone());
        for &field in &fields {
            let mut row = IdentityRow {
                check: "boundary condition",
                complex: name.clone(),
                field: field.to_string(),
                cases: 0,
                failures: 0,
            };
            for r in 0..rounds {
                let q = r % 3;
                let h = random_homotopy(&k, q, k.n_vertices() + 2, &mut rng)?;
                let op = PrismOperator::new(&h, k.clone(), q, field, Flavor::Unreduced)?;
                row.cases += 1;
                row.failures += usize::from(!verify_boundary_identity(&op).is_zero());
            }
            rows.push(row);
            let mut bci = IdentityRow {
                check: "boundary condition I",
                complex: name.clone(),
                field: field.to_string(),
                cases: 0,
                failures: 0,
            };
            let mut lemma = IdentityRow {
                check: "prism lemma",
                complex: name.clone(),
                field: field.to_string(),
                cases: 0,
                failures: 0,
            };
            for m in 1..=3.min(k.n_vertices()) {
                for parts in ordered_partitions(k.vertex_mask(), m) {
                    let p = VertexPartition::new(k.clone(), parts.clone())?;
                    bci.cases += 1;
                    bci.failures += usize::from(!verify_boundary_identity_i(&p, field, Flavor::Reduced)?.is_zero());
                    let cochains: Vec<Cochain> = parts.iter().map(|&s| random_cochain(&k, field, s, &mut rng)).collect();
                    lemma.cases += 1;
                    lemma.failures += usize::from(!prism_lemma_residual(&p, &cochains)?.is_zero());
                }
            }
            rows.push(bci);
            rows.push(lemma);
            if k.n_vertices() <= 5 {
                let rep = verify_phi_iso(&k, field)?;
                rows.push(IdentityRow {
                    check: "phi isomorphism",
                    complex: name.clone(),
                    field: field.to_string(),
                    cases: 1,
                    failures: usize::from(!rep.passed()),
                });
            }
        }
    }
    let all_zero = rows.iter().all(|r| r.failures == 0);
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!("{:<22} {:<20} {:<4} {} cases, {} failures\n", r.check, r.complex, r.field, r.cases, r.failures));
    }
    let body = IdentitiesOut {
        seed: opts.seed,
        checks: rows,
        all_zero,
    };
    let out = emit("identities", body, text, opts);
    if !all_zero {
        write_output(&out, opts)?;
        return Err(Error::Verification("an identity residual is nonzero".into()));
    }
    Ok(out)
}

fn write_output(out: &Output, opts: &Common) -> Result<()> {
    let s = match out {
        Output::Json(s) | Output::Text(s) => s,
    };
    match &opts.out {
        Some(p) => std::fs::write(p, s).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(s.as_bytes()).map_err(|e| Error::Io(e.to_string())),
    }
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let opts = &cli.opts;
    if opts.format != "json" && opts.format != "text" {
        return Err(Error::domain(format!("unknown format {:?}", opts.format)));
    }
    match &cli.command {
        Command::Homology { input } => cmd_homology(opts, input),
        Command::Tight {
            input,
            require_connected,
            full_table,
        } => cmd_tight(opts, input, *require_connected, *full_table),
        Command::WeakGolod { input } => cmd_weak_golod(opts, input),
        Command::CertifyGolod { input } => cmd_certify(opts, input),
        Command::MasseyTriple {
            input,
            classes,
            rerandomize,
        } => cmd_triple(opts, input, classes, *rerandomize),
        Command::Report { input } => cmd_report(opts, input),
        Command::Catalog => cmd_catalog(opts),
        Command::VerifyIdentities { input, rounds } => cmd_identities(opts, input, *rounds),
    }
}

fn jobs(opts: &Common) -> Result<Option<usize>> {
    if let Some(n) = opts.jobs {
        return Ok(Some(n));
    }
    match std::env::var("GOLODLAB_JOBS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::domain(format!("GOLODLAB_JOBS={v:?} is not a number"))),
        Err(_) => Ok(None),
    }
}

/// Runs the command line; returns the process exit code
/// (0 verdict computed, 1 input error, 2 internal verification failure).
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = jobs(&cli.opts).and_then(|n| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = n {
            if n == 0 {
                return Err(Error::domain("--jobs must be positive"));
            }
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;
        pool.install(|| dispatch(&cli)).and_then(|out| write_output(&out, &cli.opts))
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("golodlab: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

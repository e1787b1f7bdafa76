//! End-to-end runs behind the command line tool. Each run takes the raw
//! input text and a [`Config`] and produces a serializable report whose
//! bytes depend only on those two.

use crate::category::{left_cancellation_witness, right_cancellation_witness, FiniteCategory, Lcsc, ValidationReport};
use crate::checks::{equivariance, round_trip, RoundTrip};
use crate::error::{Error, Result};
use crate::filters::{path_delta, tight_filters, Evaluator, FilterSpace, PathSpace, Semilattice, TightReport};
use crate::groupoid::{
    certify_filters_to_paths, certify_triples_to_germs, check_germ_relation, germ_groupoid_on_filters,
    germ_groupoid_on_paths, simplicity_verdict, spielberg_groupoid, Certificate, GermGroupoid, SimplicityVerdict,
};
use crate::io::{self, CategorySpec, LoadedSystem, SystemSpec};
use crate::semigroup::{generate_semigroup, Semigroup};
use crate::zs::{
    action_groupoid, amenability_hypotheses, certify_action_groupoid, check_directed, compare_conditions,
    faithful_on_vertex_trees, graded_cocycle, layer_cocycle, property_star, pseudo_freeness_witness, semigroup_action,
    separation_witness, validate_degree_map, validate_system, zs_product, ActionComparison, AmenabilityChecklist,
    CategorySystem, ConditionComparison, Degree, DegreeMap, DegreeReport, StarReport, SystemReport, TreeReport,
    ZsProduct,
};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fmt;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Cap on generated semigroup elements and on tight-filter searches.
    pub cap: usize,
    /// Depth bound for cyclic graphs.
    pub truncate: Option<usize>,
    pub evaluators: Vec<Evaluator>,
}

impl Default for Config {
    fn default() -> Self {
        Config { cap: 1 << 16, truncate: None, evaluators: Evaluator::ALL.to_vec() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub input_sha256: String,
    pub cap: usize,
    pub truncate: Option<usize>,
    pub evaluators: Vec<&'static str>,
    /// False when the input was cut off at a depth bound.
    pub exact: bool,
}

impl Provenance {
    pub fn new(input: &str, cfg: &Config, exact: bool) -> Provenance {
        Provenance {
            version: VERSION,
            input_sha256: format!("{:x}", Sha256::digest(input.as_bytes())),
            cap: cfg.cap,
            truncate: cfg.truncate,
            evaluators: cfg.evaluators.iter().map(|e| e.name()).collect(),
            exact,
        }
    }
}

/// An error together with the pipeline stage that raised it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageError {
    pub stage: &'static str,
    #[serde(serialize_with = "display")]
    pub error: Error,
}

fn display<S: serde::Serializer>(e: &Error, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

impl StageError {
    pub fn exit_code(&self) -> i32 {
        self.error.exit_code()
    }
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.stage, self.error)
    }
}

impl std::error::Error for StageError {}

pub type StageResult<T> = std::result::Result<T, StageError>;

trait At<T> {
    fn at(self, stage: &'static str) -> StageResult<T>;
}

impl<T> At<T> for Result<T> {
    fn at(self, stage: &'static str) -> StageResult<T> {
        self.map_err(|error| StageError { stage, error })
    }
}

/// A parsed input file.
pub enum Input {
    Category { spec: CategorySpec, cat: FiniteCategory },
    System { spec: SystemSpec, loaded: Box<LoadedSystem> },
}

impl Input {
    pub fn parse(text: &str, cfg: &Config) -> StageResult<Input> {
        let schema = io::schema_of(text).at("parse")?;
        if schema == io::SYSTEM_SCHEMA {
            let spec = io::parse_system(text).at("parse")?;
            let loaded = spec.load(cfg.truncate).at("parse")?;
            Ok(Input::System { spec, loaded: Box::new(loaded) })
        } else {
            let spec = io::parse_category(text).at("parse")?;
            let cat = spec.build(cfg.truncate).at("parse")?;
            Ok(Input::Category { spec, cat })
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Input::Category { spec: CategorySpec::Table(_), .. } => "table",
            Input::Category { spec: CategorySpec::Graph(_), .. } => "graph",
            Input::System { .. } => "system",
        }
    }

    pub fn base(&self) -> &FiniteCategory {
        match self {
            Input::Category { cat, .. } => cat,
            Input::System { loaded, .. } => &loaded.system.cat,
        }
    }

    /// The category the analysis runs on: the input category, or the
    /// product of a system.
    pub fn analysed(&self) -> StageResult<FiniteCategory> {
        match self {
            Input::Category { cat, .. } => Ok(cat.clone()),
            Input::System { loaded, .. } => zs_product(&loaded.system).map(|p| p.cat).at("product"),
        }
    }
}

/// Triple `(x, a, b)` of morphism names.
pub type NamedWitness = [String; 3];

#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub provenance: Provenance,
    pub kind: &'static str,
    pub ok: bool,
    pub category: ValidationReport,
    pub left_cancellative: Option<bool>,
    pub left_cancellation_witness: Option<NamedWitness>,
    pub right_cancellative: Option<bool>,
    pub right_cancellation_witness: Option<NamedWitness>,
    pub system: Option<SystemReport>,
}

/// Category axioms, left cancellation and, for systems, the system laws.
/// `ok` is false when any of them fails.
pub fn validate(text: &str, cfg: &Config) -> StageResult<ValidateReport> {
    let input = Input::parse(text, cfg)?;
    let cat = input.base();
    let category = cat.validate();
    let named = |w: crate::category::CancellationWitness<crate::category::MorphismId>| {
        [cat.name(w.x).to_string(), cat.name(w.a).to_string(), cat.name(w.b).to_string()]
    };
    let (mut lc, mut lw, mut rc, mut rw) = (None, None, None, None);
    if category.is_valid() {
        let l = left_cancellation_witness(cat).at("cancellation")?;
        let r = right_cancellation_witness(cat).at("cancellation")?;
        lc = Some(l.is_none());
        rc = Some(r.is_none());
        lw = l.map(named);
        rw = r.map(named);
    }
    let system = match &input {
        Input::System { loaded, .. } => Some(validate_system(&loaded.system)),
        Input::Category { .. } => None,
    };
    let ok = category.is_valid() && lc == Some(true) && system.as_ref().is_none_or(|s| s.valid);
    Ok(ValidateReport {
        provenance: Provenance::new(text, cfg, cat.is_exact()),
        kind: input.kind(),
        ok,
        category,
        left_cancellative: lc,
        left_cancellation_witness: lw,
        right_cancellative: rc,
        right_cancellation_witness: rw,
        system,
    })
}

/// Every object the analysis computes, kept for the other commands.
pub struct Analysis {
    pub l: Lcsc,
    pub s: Semigroup,
    pub e: Semilattice,
    pub fs: FilterSpace,
    pub ps: PathSpace,
    pub tight: TightReport,
    pub on_filters: GermGroupoid,
    pub on_paths: GermGroupoid,
}

impl Analysis {
    pub fn run(cat: FiniteCategory, cfg: &Config) -> StageResult<Analysis> {
        let l = Lcsc::new(cat).at("category")?;
        let s = generate_semigroup(&l, cfg.cap).at("semigroup")?;
        let e = Semilattice::of_semigroup(&l, &s).at("semilattice")?;
        let fs = FilterSpace::new(&l, &e).at("filters")?;
        let mut ps = PathSpace::new(&l);
        let tight = tight_filters(&l, &e, &fs, &mut ps, &cfg.evaluators, cfg.cap).at("tight")?;
        let on_filters = germ_groupoid_on_filters(&l, &s, &e, &fs, &tight.tight).at("groupoid")?;
        let on_paths = germ_groupoid_on_paths(&l, &s, &ps).at("groupoid")?;
        Ok(Analysis { l, s, e, fs, ps, tight, on_filters, on_paths })
    }

    pub fn ultra(&self) -> Vec<usize> {
        self.fs.ultra.clone()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CategorySummary {
    pub objects: usize,
    pub morphisms: usize,
    pub right_cancellative: bool,
    pub singly_aligned: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FilterCounts {
    pub semilattice: usize,
    pub filters: usize,
    pub ultrafilters: usize,
    pub diagonal: usize,
    pub tight: usize,
    pub evaluators: Vec<(&'static str, usize)>,
    pub evaluators_agree: bool,
    pub cover_search_exhaustive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupoidSummary {
    pub units: usize,
    pub arrows: usize,
    pub filters_to_paths: CertificateSummary,
    pub triples_to_germs: CertificateSummary,
    pub germ_relation_pairs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSummary {
    pub units: usize,
    pub arrows: usize,
    pub composable_pairs: usize,
}

impl From<&Certificate> for CertificateSummary {
    fn from(c: &Certificate) -> Self {
        CertificateSummary { units: c.units, arrows: c.arrows, composable_pairs: c.composable_pairs }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub provenance: Provenance,
    pub kind: &'static str,
    pub category: CategorySummary,
    pub semigroup_elements: usize,
    pub idempotents: usize,
    pub filters: FilterCounts,
    pub groupoid_elements: usize,
    pub groupoid: GroupoidSummary,
    pub hausdorff: bool,
    pub effective: Option<bool>,
    pub minimal: bool,
    pub simple: Option<bool>,
    pub verdict: SimplicityVerdict,
}

/// The full pipeline on a category file, or on the product of a system file.
pub fn analyze(text: &str, cfg: &Config) -> StageResult<AnalyzeReport> {
    let input = Input::parse(text, cfg)?;
    let cat = input.analysed()?;
    let exact = cat.is_exact();
    let a = Analysis::run(cat, cfg)?;
    analyze_with(text, cfg, input.kind(), exact, &a)
}

pub fn analyze_with(
    text: &str,
    cfg: &Config,
    kind: &'static str,
    exact: bool,
    a: &Analysis,
) -> StageResult<AnalyzeReport> {
    let l = &a.l;
    let f2p = certify_filters_to_paths(l, &a.e, &a.fs, &a.ps, &a.on_filters, &a.on_paths).at("isomorphism")?;
    let tg = spielberg_groupoid(l, &a.ps).at("triples")?;
    let t2g = certify_triples_to_germs(l, &a.ps, &tg, &a.on_paths).at("isomorphism")?;
    let relation = check_germ_relation(l, &a.s, &a.e, &a.fs, &a.on_filters).at("groupoid")?;
    let verdict = simplicity_verdict(l, &a.s, &a.on_paths.groupoid, &a.ultra(), &a.tight.tight).at("verdicts")?;
    let g = &a.on_paths.groupoid;
    Ok(AnalyzeReport {
        provenance: Provenance::new(text, cfg, exact),
        kind,
        category: CategorySummary {
            objects: l.category().num_objects(),
            morphisms: l.len(),
            right_cancellative: crate::category::is_right_cancellative(l.category()).at("category")?,
            singly_aligned: l.singly_aligned(),
        },
        semigroup_elements: a.s.len(),
        idempotents: a.s.idempotents(l).count(),
        filters: filter_counts(a),
        groupoid_elements: g.len(),
        groupoid: GroupoidSummary {
            units: g.num_units(),
            arrows: g.len(),
            filters_to_paths: (&f2p).into(),
            triples_to_germs: (&t2g).into(),
            germ_relation_pairs: relation,
        },
        hausdorff: verdict.hausdorff.hausdorff,
        effective: verdict.effective,
        minimal: verdict.minimal,
        simple: verdict.simple,
        verdict,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FilterOptions {
    pub ultra: bool,
    pub tight: bool,
    pub check_equivalences: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FilterEntry {
    /// Least element of the filter.
    pub generator: String,
    pub size: usize,
    pub ultra: bool,
    pub diagonal: bool,
    pub tight: bool,
    /// Largest morphism of the corresponding path set.
    pub path_top: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Equivalences {
    pub round_trip: RoundTrip,
    pub equivariance_pairs: usize,
    pub evaluators_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltersReport {
    pub provenance: Provenance,
    pub counts: FilterCounts,
    pub filters: Vec<FilterEntry>,
    pub equivalences: Option<Equivalences>,
}

/// Lists the filters of the idempotent semilattice. With `ultra` or
/// `tight` set the list is restricted to those filters.
pub fn filters(text: &str, cfg: &Config, opts: FilterOptions) -> StageResult<FiltersReport> {
    let input = Input::parse(text, cfg)?;
    let cat = input.analysed()?;
    let exact = cat.is_exact();
    let a = Analysis::run(cat, cfg)?;
    let l = &a.l;
    let mut entries = Vec::new();
    for k in 0..a.fs.len() {
        let ultra = a.fs.ultra.contains(&k);
        let tight = a.tight.tight.contains(&k);
        if (opts.ultra && !ultra) || (opts.tight && !tight) {
            continue;
        }
        let path_top = if a.fs.star[k] {
            Some(l.name(path_delta(l, &a.e, &a.fs, k).at("filters")?.top).to_string())
        } else {
            None
        };
        entries.push(FilterEntry {
            generator: l.display(a.e.element(a.fs.filters[k].min)),
            size: a.fs.filters[k].members.len(),
            ultra,
            diagonal: a.fs.star[k],
            tight,
            path_top,
        });
    }
    let equivalences = if opts.check_equivalences {
        Some(Equivalences {
            round_trip: round_trip(l, &a.e, &a.fs, &a.ps).at("round trip")?,
            equivariance_pairs: equivariance(l, &a.s, &a.e, &a.fs).at("equivariance")?,
            evaluators_agree: true,
        })
    } else {
        None
    };
    Ok(FiltersReport {
        provenance: Provenance::new(text, cfg, exact),
        counts: filter_counts(&a),
        filters: entries,
        equivalences,
    })
}

fn filter_counts(a: &Analysis) -> FilterCounts {
    FilterCounts {
        semilattice: a.e.len(),
        filters: a.fs.len(),
        ultrafilters: a.fs.ultra.len(),
        diagonal: a.fs.star.iter().filter(|&&x| x).count(),
        tight: a.tight.tight.len(),
        evaluators: a.tight.evaluations.iter().map(|(e, t)| (e.name(), t.len())).collect(),
        evaluators_agree: true,
        cover_search_exhaustive: a.tight.cover_search_exhaustive,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    pub hausdorff: bool,
    pub effective: Option<bool>,
    pub minimal: bool,
    pub simple: Option<bool>,
    pub gate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowEntry {
    pub label: String,
    pub source: String,
    pub range: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupoidReport {
    pub provenance: Provenance,
    pub units: Vec<String>,
    pub arrows: Vec<ArrowEntry>,
    pub verdict: Verdicts,
    pub triples_to_germs: CertificateSummary,
}

/// The tight groupoid on path sets with its verdicts, and its DOT text.
pub fn groupoid(text: &str, cfg: &Config) -> StageResult<(GroupoidReport, String)> {
    let input = Input::parse(text, cfg)?;
    let cat = input.analysed()?;
    let exact = cat.is_exact();
    let a = Analysis::run(cat, cfg)?;
    let tg = spielberg_groupoid(&a.l, &a.ps).at("triples")?;
    let cert = certify_triples_to_germs(&a.l, &a.ps, &tg, &a.on_paths).at("isomorphism")?;
    let v = simplicity_verdict(&a.l, &a.s, &a.on_paths.groupoid, &a.ultra(), &a.tight.tight).at("verdicts")?;
    let g = &a.on_paths.groupoid;
    let report = GroupoidReport {
        provenance: Provenance::new(text, cfg, exact),
        units: g.unit_labels.clone(),
        arrows: (0..g.len())
            .map(|x| ArrowEntry {
                label: g.arrow_labels[x].clone(),
                source: g.unit_labels[g.source[x]].clone(),
                range: g.unit_labels[g.range[x]].clone(),
            })
            .collect(),
        verdict: Verdicts {
            hausdorff: v.hausdorff.hausdorff,
            effective: v.effective,
            minimal: v.minimal,
            simple: v.simple,
            gate: v.gate.holds,
        },
        triples_to_germs: (&cert).into(),
    };
    let dot = dot(&a);
    Ok((report, dot))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Units as boxes labelled by the generator of their path set, germs as
/// labelled arrows. Unit arrows are left out.
pub fn dot(a: &Analysis) -> String {
    let g = &a.on_paths.groupoid;
    let mut out = String::from("digraph tight_groupoid {\n  node [shape=box];\n");
    for (u, label) in g.unit_labels.iter().enumerate() {
        out.push_str(&format!("  u{u} [label={}];\n", quote(label)));
    }
    for x in 0..g.len() {
        if g.unit_arrow.contains(&x) {
            continue;
        }
        out.push_str(&format!("  u{} -> u{} [label={}];\n", g.source[x], g.range[x], quote(&g.arrow_labels[x])));
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerSummary {
    pub degree: Degree,
    pub arrows: usize,
    pub open: bool,
    /// Size of the kernel of the group-valued cocycle on this layer.
    pub group_kernel: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub degree_map: DegreeReport,
    pub property_star: Option<StarReport>,
    pub cocycle_representatives: usize,
    pub cocycle_composable_pairs: usize,
    pub kernel_size: usize,
    pub kernel_open: bool,
    pub layers: Vec<LayerSummary>,
    pub action_groupoid: Option<ActionComparison>,
    pub range_formula_mismatches: usize,
}

/// Unique factorization, property (★), the graded cocycle with its
/// layers, and the comparison with the action groupoid of the induced
/// semigroup action.
pub fn grading_checks(a: &Analysis, d: &DegreeMap) -> StageResult<GradingReport> {
    let l = &a.l;
    let mut report = GradingReport {
        degree_map: validate_degree_map(l, d),
        property_star: None,
        cocycle_representatives: 0,
        cocycle_composable_pairs: 0,
        kernel_size: 0,
        kernel_open: false,
        layers: Vec::new(),
        action_groupoid: None,
        range_formula_mismatches: 0,
    };
    if !report.degree_map.valid {
        return Ok(report);
    }
    report.property_star = Some(property_star(l, d, &a.ps));
    let c = graded_cocycle(l, &a.on_paths, &d.degrees, &d.monoid, &d.relevant()).at("graded cocycle")?;
    let act = semigroup_action(l, &d.degrees, &a.ps).at("semigroup action")?;
    let directed = check_directed(l, &d.degrees, &d.monoid, &a.ps, &act).at("semigroup action")?;
    let ag = action_groupoid(l, &d.degrees, &a.ps, &act).at("action groupoid")?;
    report.action_groupoid = Some(certify_action_groupoid(&a.on_paths, &ag, &d.degrees, &c).at("action groupoid")?);
    report.range_formula_mismatches = directed.range_formula_mismatches.len();
    report.layers = c
        .layers
        .iter()
        .map(|x| LayerSummary { degree: x.degree.clone(), arrows: x.arrows.len(), open: x.open, group_kernel: None })
        .collect();
    report.cocycle_representatives = c.representatives_checked;
    report.cocycle_composable_pairs = c.composable_pairs_checked;
    report.kernel_size = c.kernel.len();
    report.kernel_open = c.kernel_open;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductGrading {
    pub cocycle_representatives: usize,
    pub cocycle_composable_pairs: usize,
    pub kernel_size: usize,
    pub kernel_open: bool,
    pub layers: Vec<LayerSummary>,
    /// Why the group-valued layer cocycles were not computed.
    pub layer_cocycle_skipped: Option<String>,
}

/// The graded cocycle of the product groupoid, graded through the base,
/// and the group-valued cocycle on each layer.
pub fn product_grading(
    a: &Analysis,
    sys: &CategorySystem,
    product: &ZsProduct,
    base_degree: &DegreeMap,
) -> StageResult<ProductGrading> {
    let l = &a.l;
    let deg: Vec<Degree> = l.morphisms().map(|m| base_degree.of(product.base(m)).clone()).collect();
    let c = graded_cocycle(l, &a.on_paths, &deg, &base_degree.monoid, &base_degree.relevant()).at("graded cocycle")?;
    let mut skipped = None;
    let mut layers = Vec::new();
    for layer in &c.layers {
        let group_kernel = match layer_cocycle(l, product, sys, base_degree, &a.on_paths, layer) {
            Ok(lc) => Some(lc.kernel_size),
            Err(Error::HypothesesNotMet(why)) => {
                skipped = Some(why);
                None
            }
            Err(e) => return Err(e).at("layer cocycle"),
        };
        layers.push(LayerSummary {
            degree: layer.degree.clone(),
            arrows: layer.arrows.len(),
            open: layer.open,
            group_kernel,
        });
    }
    Ok(ProductGrading {
        cocycle_representatives: c.representatives_checked,
        cocycle_composable_pairs: c.composable_pairs_checked,
        kernel_size: c.kernel.len(),
        kernel_open: c.kernel_open,
        layers,
        layer_cocycle_skipped: skipped,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductSummary {
    pub morphisms: usize,
    pub left_cancellative: bool,
    pub right_cancellative: bool,
    pub right_cancellation_witness: Option<NamedWitness>,
    pub tight_units: usize,
    pub groupoid_arrows: usize,
    pub hausdorff: bool,
    pub effective: Option<bool>,
    pub minimal: bool,
    pub simple: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZsReport {
    pub provenance: Provenance,
    pub system: SystemReport,
    pub pseudo_free: bool,
    pub pseudo_freeness_witness: Option<(String, String)>,
    pub separation_witness: Option<(String, String, String)>,
    pub vertex_trees: TreeReport,
    pub product: Option<ProductSummary>,
    pub conditions: Option<ConditionComparison>,
    pub base_grading: Option<GradingReport>,
    pub product_grading: Option<ProductGrading>,
    pub checklist: Option<AmenabilityChecklist>,
}

/// System laws, the product, its cancellation and groupoid, the base
/// translations of the two conditions, the grading checks and the
/// amenability checklist.
pub fn zs(text: &str, cfg: &Config) -> StageResult<ZsReport> {
    let spec = io::parse_system(text).at("parse")?;
    let loaded = spec.load(cfg.truncate).at("parse")?;
    let sys = &loaded.system;
    let exact = sys.cat.is_exact();
    let system = validate_system(sys);
    let pf = pseudo_freeness_witness(sys);
    let named =
        |(g, a): (usize, crate::category::MorphismId)| (sys.group.name(g).to_string(), sys.cat.name(a).to_string());
    let sep = separation_witness(sys)
        .map(|(g, h, a)| (sys.group.name(g).to_string(), sys.group.name(h).to_string(), sys.cat.name(a).to_string()));
    let depth = sys.cat.num_morphisms();
    let vertex_trees = faithful_on_vertex_trees(sys, depth);
    let mut report = ZsReport {
        provenance: Provenance::new(text, cfg, exact),
        pseudo_free: pf.is_none(),
        pseudo_freeness_witness: pf.map(named),
        separation_witness: sep,
        vertex_trees,
        product: None,
        conditions: None,
        base_grading: None,
        product_grading: None,
        checklist: None,
        system,
    };
    if !report.system.valid {
        return Ok(report);
    }
    let product = zs_product(sys).at("product")?;
    let base = Lcsc::new(sys.cat.clone()).at("category")?;
    let lcw = left_cancellation_witness(&product.cat).at("product")?;
    let rcw = right_cancellation_witness(&product.cat).at("product")?;
    let pname = |w: crate::category::CancellationWitness<crate::category::MorphismId>| {
        [product.cat.name(w.x).to_string(), product.cat.name(w.a).to_string(), product.cat.name(w.b).to_string()]
    };
    if let Some(w) = lcw {
        let [left, a, b] = pname(w);
        return Err(Error::NotLeftCancellative { left, a, b }).at("product");
    }
    let a = Analysis::run(product.cat.clone(), cfg)?;
    let v = simplicity_verdict(&a.l, &a.s, &a.on_paths.groupoid, &a.ultra(), &a.tight.tight).at("verdicts")?;
    report.product = Some(ProductSummary {
        morphisms: product.cat.num_morphisms(),
        left_cancellative: true,
        right_cancellative: rcw.is_none(),
        right_cancellation_witness: rcw.map(pname),
        tight_units: a.on_paths.groupoid.num_units(),
        groupoid_arrows: a.on_paths.groupoid.len(),
        hausdorff: v.hausdorff.hausdorff,
        effective: v.effective,
        minimal: v.minimal,
        simple: v.simple,
    });
    report.conditions = Some(compare_conditions(&base, sys, &a.l, &product).at("conditions")?);
    if let Some(d) = &loaded.degree {
        let ba = Analysis::run(sys.cat.clone(), cfg)?;
        report.base_grading = Some(grading_checks(&ba, d)?);
        report.product_grading = Some(product_grading(&a, sys, &product, d)?);
        report.checklist =
            Some(amenability_hypotheses(&base, sys, d, &ba.ps, loaded.g_amenable.clone(), loaded.q_amenable.clone()));
    }
    Ok(report)
}

/// JSON rendering shared by every command.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports are plain data") + "\n"
}

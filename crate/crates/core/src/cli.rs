//! The `averaging` command line: thin wrappers turning JSON files into
//! library calls and reports.
//!
//! Exit status is 0 when every check holds, 1 when a structure or property
//! fails, 2 for unreadable input, unknown commands and exceeded guards.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::averaging::{self as avg, Carrier, EnumerateOptions, ProductRack};
use crate::error::Error;
use crate::group_algebra as ga;
use crate::groups::{self, FiniteGroup};
use crate::io::{self, LoadError};
use crate::leibniz::{self as lb, braided, examples as lx, AlgebraData, AveragingKind, StructureConstants};
use crate::magma::{self, FiniteMagma, SetMap, StandardRack};
use crate::pairings::{self as pr, RackPairing};
use crate::ybe;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Verify,
    Enumerate,
    Construct,
    Check,
    Export,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "averaging", version, about = "Averaging operators on racks, groups and Leibniz-type algebras")]
pub struct Cli {
    pub verb: Verb,
    /// What to act on, e.g. `rack`, `averaging`, `holomorph-bijection`.
    pub subject: String,
    /// Primary input file (same as --input).
    pub file: Option<PathBuf>,
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub rack: Option<PathBuf>,
    #[arg(long)]
    pub group: Option<PathBuf>,
    #[arg(long)]
    pub operator: Option<PathBuf>,
    /// Algebra kind: lie, leibniz, leibniz-left, di-leibniz, lie-leibniz, ad-invariant;
    /// for `export rack`: trivial, flip, takasaki, conjugation.
    #[arg(long)]
    pub kind: Option<String>,
    /// Named built-in structure for `export`.
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long)]
    pub pointed_only: bool,
    /// Size guard for exhaustive searches.
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub kmax: usize,
    #[arg(long, default_value_t = 2)]
    pub lmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// A failure carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Invalid(p, err) => {
                let mut f = Failure::from(err);
                f.message = format!("{p}: {}", f.message);
                f
            }
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EntryOutOfRange { .. }
            | Error::ImageOutOfRange { .. }
            | Error::Malformed(_)
            | Error::SizeMismatch(_)
            | Error::GuardExceeded { .. } => EXIT_INPUT,
            _ => EXIT_FAILED,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<Output, Failure>;

/// A report plus whether everything it checks holds, or a stream of lines.
pub enum Output {
    Report(Value, bool),
    Lines(Vec<Value>),
}

fn report(v: impl Serialize, ok: bool) -> Outcome {
    Ok(Output::Report(serde_json::to_value(v).expect("serializable report"), ok))
}

fn lines<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> Value) -> Outcome {
    Ok(Output::Lines(items.into_iter().map(f).collect()))
}

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn primary(&self) -> Option<&Path> {
        self.cli.file.as_deref().or(self.cli.input.as_deref())
    }

    fn need<'p>(&self, p: Option<&'p Path>, what: &str) -> Result<&'p Path, Failure> {
        p.ok_or_else(|| Failure::input(format!("missing {what} input")))
    }

    fn rack_path(&self) -> Result<&Path, Failure> {
        self.need(self.cli.rack.as_deref().or(self.primary()), "--rack")
    }

    fn magma(&self, p: &Path) -> Result<FiniteMagma, Failure> {
        Ok(io::load(p, io::MagmaDto::into_magma)?)
    }

    fn rack(&self) -> Result<FiniteMagma, Failure> {
        self.magma(self.rack_path()?)
    }

    fn group(&self) -> Result<FiniteGroup, Failure> {
        let p = self.need(self.cli.group.as_deref().or(self.primary()), "--group")?;
        Ok(io::load(p, io::GroupDto::into_group)?)
    }

    fn operator(&self) -> Result<SetMap, Failure> {
        let p = self.need(self.cli.operator.as_deref(), "--operator")?;
        Ok(io::load(p, io::OperatorDto::into_map)?)
    }

    fn linear_operator(&self) -> Result<crate::linalg::LinearMap, Failure> {
        let p = self.need(self.cli.operator.as_deref(), "--operator")?;
        Ok(io::load(p, io::LinearMapDto::into_matrix)?)
    }

    fn structure(&self) -> Result<StructureConstants, Failure> {
        let p = self.need(self.primary(), "structure constants")?;
        Ok(io::load(p, io::StructureDto::into_constants)?)
    }

    fn pairing_tables(&self) -> Result<(FiniteMagma, FiniteMagma), Failure> {
        let p = self.need(self.primary(), "pairing")?;
        Ok(io::load(p, io::PairingDto::into_tables)?)
    }

    fn pairing(&self) -> Result<RackPairing, Failure> {
        let (d, bd) = self.pairing_tables()?;
        Ok(RackPairing::new(d, bd)?)
    }

    /// `--group` if given, otherwise the rack input.
    fn carrier_source(&self) -> Result<CarrierSource, Failure> {
        if self.cli.group.is_some() {
            Ok(CarrierSource::Group(self.group()?))
        } else {
            Ok(CarrierSource::Rack(self.rack()?))
        }
    }

    fn guard(&self, default: usize) -> usize {
        self.cli.max_size.unwrap_or(default)
    }

    fn kind(&self) -> Result<&str, Failure> {
        self.cli.kind.as_deref().ok_or_else(|| Failure::input("missing --kind"))
    }
}

enum CarrierSource {
    Group(FiniteGroup),
    Rack(FiniteMagma),
}

impl CarrierSource {
    fn carrier(&self) -> Carrier<'_> {
        match self {
            CarrierSource::Group(g) => Carrier::Group(g),
            CarrierSource::Rack(q) => Carrier::Rack(q),
        }
    }
}

fn magma_json(m: &FiniteMagma) -> Value {
    serde_json::to_value(io::MagmaDto::from_magma(m)).expect("magma json")
}

fn map_json(a: &SetMap) -> Value {
    serde_json::to_value(io::OperatorDto::from_map(a)).expect("map json")
}

fn matrix_json(m: &crate::linalg::Matrix) -> Value {
    serde_json::to_value(io::LinearMapDto::from_matrix(m)).expect("matrix json")
}

fn structure_json(s: &StructureConstants) -> Value {
    serde_json::to_value(io::StructureDto::from_constants(s)).expect("structure json")
}

fn pairing_json(p: &RackPairing) -> Value {
    serde_json::to_value(io::PairingDto::from_pairing(p)).expect("pairing json")
}

fn verdict_json(v: &magma::Verdict) -> Value {
    json!({ "holds": v.holds, "witness": v.witness })
}

fn averaging_kind(s: &str) -> Result<AveragingKind, Failure> {
    Ok(match s {
        "lie" => AveragingKind::Lie,
        "leibniz-left" => AveragingKind::LeibnizLeft,
        "leibniz" => AveragingKind::Leibniz,
        "ad-invariant" => AveragingKind::AdInvariant,
        other => return Err(Failure::input(format!("unknown averaging kind {other:?}"))),
    })
}

fn verify(ctx: &Ctx, subject: &str) -> Outcome {
    match subject {
        "rack" => {
            let q = ctx.rack()?;
            let r = magma::validate_rack(&q, None)?;
            let ok = r.is_rack;
            report(r, ok)
        }
        "group" => {
            let p = ctx.need(ctx.cli.group.as_deref().or(ctx.primary()), "--group")?;
            let m = io::load(p, io::MagmaDto::into_magma)?;
            match groups::validate_group(m) {
                Ok(g) => report(
                    json!({ "is_group": true, "order": g.order(), "identity": g.identity(), "is_abelian": g.is_abelian() }),
                    true,
                ),
                Err(e) => report(json!({ "is_group": false, "reason": e.to_string() }), false),
            }
        }
        "averaging" => {
            let src = ctx.carrier_source()?;
            let a = ctx.operator()?;
            let v = avg::is_averaging(src.carrier(), &a)?;
            report(json!({ "is_averaging": v.holds, "witness": v.witness }), v.holds)
        }
        "relative-averaging" => {
            let p = ctx.need(ctx.primary(), "action")?;
            let act = io::load(p, io::ActionDto::into_action)?;
            let b = ctx.operator()?;
            let v = avg::is_relative_averaging(&act, &b)?;
            report(json!({ "is_relative_averaging": v.holds, "witness": v.witness }), v.holds)
        }
        "ad-invariant" => {
            let g = ctx.group()?;
            let c = ctx.operator()?;
            let v = avg::is_ad_invariant_map(&g, &c)?;
            report(json!({ "is_ad_invariant": v.holds, "witness": v.witness }), v.holds)
        }
        "pairing" => {
            let (d, bd) = ctx.pairing_tables()?;
            let v = pr::is_rack_pairing(&d, &bd);
            let class = if v.holds {
                Some(pr::classify_pairing(&RackPairing::new(d, bd)?))
            } else {
                None
            };
            report(json!({ "is_pairing": v.holds, "witness": v.witness, "class": class }), v.holds)
        }
        "dirack" => {
            let p = ctx.need(ctx.primary(), "di-rack")?;
            let dto: io::DiRackDto = io::load(p, Ok)?;
            let d = FiniteMagma::new(dto.diamond)?;
            let tri = FiniteMagma::new(dto.tri)?;
            let v = pr::is_dirack(&d, &tri)?;
            report(json!({ "is_dirack": v.holds, "witness": v.witness }), v.holds)
        }
        "brace" => {
            let p = ctx.need(ctx.primary(), "brace")?;
            let (dot, bullet) = io::load(p, io::BraceDto::into_tables)?;
            match pr::validate_skew_brace(dot, bullet) {
                Ok(sb) => {
                    let lemma = pr::brace_lemma_check(&sb)?;
                    report(
                        json!({ "is_skew_brace": true, "two_sided": sb.two_sided, "inverse_lemma": lemma }),
                        lemma,
                    )
                }
                Err(e @ (Error::NotAGroup(_) | Error::Precondition(_) | Error::AxiomFailure { .. })) => {
                    report(json!({ "is_skew_brace": false, "reason": e.to_string() }), false)
                }
                Err(e) => Err(e.into()),
            }
        }
        "group-rack" => {
            let g = ctx.group()?;
            let q = ctx.magma(ctx.need(ctx.cli.rack.as_deref(), "--rack")?)?;
            let v = pr::is_group_rack(&g, &q, ctx.cli.pointed_only)?;
            report(json!({ "is_group_rack": v.holds, "witness": v.witness }), v.holds)
        }
        "algebra" => {
            let kind = ctx.kind()?;
            let p = ctx.need(ctx.primary(), "algebra")?;
            let v = match kind {
                "lie" | "leibniz" => {
                    let s = io::load(p, io::StructureDto::into_constants)?;
                    let data = if kind == "lie" { AlgebraData::Lie(&s) } else { AlgebraData::Leibniz(&s) };
                    lb::validate_algebra(data)?
                }
                "di-leibniz" => {
                    let d = io::load(p, io::DiLeibnizDto::into_di_leibniz)?;
                    lb::validate_algebra(AlgebraData::DiLeibniz(&d))?
                }
                "lie-leibniz" => {
                    let d = io::load(p, io::DiLeibnizDto::into_di_leibniz)?;
                    lb::validate_algebra(AlgebraData::LieLeibniz(&d.left, &d.right))?
                }
                other => return Err(Failure::input(format!("unknown algebra kind {other:?}"))),
            };
            report(json!({ "kind": kind, "valid": v.holds, "witness": v.witness }), v.holds)
        }
        "linear-averaging" => {
            let kind = averaging_kind(ctx.kind()?)?;
            let s = ctx.structure()?;
            let p = ctx.linear_operator()?;
            let v = lb::is_linear_averaging(kind, &s, &p)?;
            report(json!({ "is_averaging": v.holds, "witness": v.witness }), v.holds)
        }
        "ybe" => {
            let p = ctx.need(ctx.primary(), "solution")?;
            let s = io::load(p, io::SolutionDto::into_solution)?;
            let v = ybe::is_ybe_solution(&s);
            report(
                json!({ "is_solution": v.holds, "witness": v.witness, "invertible": ybe::is_invertible(&s) }),
                v.holds,
            )
        }
        "braided-averaging" => {
            let p = ctx.need(ctx.primary(), "solution")?;
            let s = io::load(p, io::SolutionDto::into_solution)?;
            let a = ctx.operator()?;
            let v = ybe::is_braided_averaging(&s, &a)?;
            report(json!({ "is_braided_averaging": v.holds, "witness": v.witness }), v.holds)
        }
        "hopf-averaging" => {
            let g = ctx.group()?;
            let b = ctx.linear_operator()?;
            let v = ga::is_hopf_averaging(&g, &b)?;
            report(json!({ "is_hopf_averaging": v.holds, "witness": v.witness }), v.holds)
        }
        other => Err(unknown(Verb::Verify, other)),
    }
}

fn enumerate(ctx: &Ctx, subject: &str) -> Outcome {
    match subject {
        "racks" => {
            let n = ctx.cli.size.ok_or_else(|| Failure::input("missing --size"))?;
            let racks = magma::enumerate_racks(n, ctx.guard(4))?;
            lines(racks.iter(), magma_json)
        }
        "averaging" => {
            let src = ctx.carrier_source()?;
            let opts = EnumerateOptions {
                pointed_only: ctx.cli.pointed_only,
                max_size: ctx.guard(avg::ENUMERATION_GUARD),
            };
            let ops = avg::enumerate_averaging(src.carrier(), opts)?;
            lines(ops.iter(), map_json)
        }
        "pairings" => {
            let q = ctx.rack()?;
            let ps = pr::enumerate_pairings(&q, ctx.guard(pr::HOLOMORPH_GUARD))?;
            lines(ps.iter(), pairing_json)
        }
        "regular-subracks" => {
            let q = ctx.rack()?;
            let hol = pr::holomorph(&q, ctx.guard(pr::HOLOMORPH_GUARD))?;
            lines(pr::enumerate_regular_subracks(&hol), |h| json!({ "subrack": h }))
        }
        "automorphisms" => {
            let g = ctx.group()?;
            let autos = groups::automorphism_group(&g, ctx.guard(groups::AUTOMORPHISM_GUARD))?;
            lines(autos.iter(), map_json)
        }
        other => Err(unknown(Verb::Enumerate, other)),
    }
}

fn construct(ctx: &Ctx, subject: &str) -> Outcome {
    match subject {
        "descendent" => {
            let src = ctx.carrier_source()?;
            let a = ctx.operator()?;
            report(magma_json(&avg::descendent_rack(src.carrier(), &a)?), true)
        }
        "transported" => {
            let g = ctx.group()?;
            let a = ctx.operator()?;
            report(magma_json(&avg::product_rack(ProductRack::Transported(&g, &a))?), true)
        }
        "hierarchy" => {
            let src = ctx.carrier_source()?;
            let a = ctx.operator()?;
            let h = avg::power_hierarchy(src.carrier(), &a, ctx.cli.kmax, ctx.cli.lmax)?;
            let ok = h.all_hold();
            let tables: Vec<Value> = h.tables.iter().map(magma_json).collect();
            report(
                json!({
                    "tables": tables,
                    "powers_averaging": h.powers_averaging,
                    "powers_averaging_on_descendents": h.powers_averaging_on_descendents,
                    "composite_identity": h.composite_identity,
                    "pairings": h.pairings,
                    "failures": h.failures,
                }),
                ok,
            )
        }
        "k-pairing" => {
            let q = ctx.rack()?;
            let a = ctx.operator()?;
            let ops = pr::k_pairing_from_averaging(&q, &a, ctx.cli.kmax)?;
            let v = pr::is_rack_k_pairing(&ops)?;
            let tables: Vec<Value> = ops.iter().map(magma_json).collect();
            report(json!({ "operations": tables, "verdict": verdict_json(&v) }), v.holds)
        }
        "dirack" => {
            let p = ctx.pairing()?;
            let dr = pr::dirack_from_pairing(&p)?;
            report(json!({ "size": p.size(), "diamond": dr.diamond.rows(), "tri": dr.tri.rows() }), true)
        }
        "pairing" => {
            let path = ctx.need(ctx.primary(), "di-rack")?;
            let dto: io::DiRackDto = io::load(path, Ok)?;
            let dr = pr::DiRack::new(FiniteMagma::new(dto.diamond)?, FiniteMagma::new(dto.tri)?)?;
            report(pairing_json(&pr::pairing_from_dirack(&dr)?), true)
        }
        "recover-averaging" => {
            let p = ctx.pairing()?;
            report(map_json(&pr::recover_averaging(&p)?), true)
        }
        "holomorph" => {
            let q = ctx.rack()?;
            let hol = pr::holomorph(&q, ctx.guard(pr::HOLOMORPH_GUARD))?;
            let autos: Vec<Value> = hol.automorphisms.iter().map(map_json).collect();
            report(json!({ "automorphisms": autos, "table": magma_json(&hol.table) }), true)
        }
        "group-rack-embedding" => {
            let g = ctx.group()?;
            let q = ctx.magma(ctx.need(ctx.cli.rack.as_deref(), "--rack")?)?;
            let e = avg::embed_group_rack(&g, &q)?;
            report(
                json!({
                    "group": io::GroupDto::from_group(&e.product),
                    "operator": map_json(&e.operator),
                    "inclusion": e.inclusion.image(),
                    "inner_order": e.inner.elements.len(),
                }),
                true,
            )
        }
        "leibnizification" => {
            let p = ctx.need(ctx.primary(), "di-Leibniz algebra")?;
            let d = io::load(p, io::DiLeibnizDto::into_di_leibniz)?;
            let lz = lb::leibnizification(&d)?;
            report(
                json!({
                    "kernel_dim": lz.kernel.dim(),
                    "complement": lz.complement,
                    "bracket": structure_json(&lz.bracket),
                    "quotient_map": matrix_json(&lz.quotient),
                }),
                true,
            )
        }
        "di-leibniz-embedding" => {
            let p = ctx.need(ctx.primary(), "di-Leibniz algebra")?;
            let d = io::load(p, io::DiLeibnizDto::into_di_leibniz)?;
            embedding_report(&lb::embed_di_leibniz(&d)?)
        }
        "lie-leibniz-embedding" => {
            let p = ctx.need(ctx.primary(), "Lie-Leibniz algebra")?;
            let d = io::load(p, io::DiLeibnizDto::into_di_leibniz)?;
            embedding_report(&lb::embed_lie_leibniz(&d.left, &d.right)?)
        }
        "descendent-leibniz" => {
            let g = ctx.structure()?;
            let p = ctx.linear_operator()?;
            report(structure_json(&lb::descendent_leibniz(&g, &p)?), true)
        }
        "braided-rack" => {
            let q = ctx.rack()?;
            let s = ybe::braided_from_rack(&q)?;
            report(io::SolutionDto::from_solution(&s), true)
        }
        "braided-lie" => {
            let g = ctx.structure()?;
            let s = braided::braided_from_lie(&g)?;
            let holds = braided::ybe_linear_check(&s)?;
            report(json!({ "operator": matrix_json(&s), "ybe": holds }), holds)
        }
        "hopf-extension" => {
            let g = ctx.group()?;
            let a = ctx.operator()?;
            report(matrix_json(&ga::extend_operator(&g, &a)?), true)
        }
        "hopf-restriction" => {
            let g = ctx.group()?;
            let b = ctx.linear_operator()?;
            report(map_json(&ga::restrict_operator(&g, &b)?), true)
        }
        other => Err(unknown(Verb::Construct, other)),
    }
}

fn embedding_report(e: &lb::AveragingEmbedding) -> Outcome {
    report(
        json!({
            "ambient": structure_json(&e.ambient),
            "operator": matrix_json(&e.operator),
            "inclusion": matrix_json(&e.inclusion),
            "quotient_dim": e.quotient_dim,
        }),
        true,
    )
}

fn check(ctx: &Ctx, subject: &str) -> Outcome {
    match subject {
        "holomorph-bijection" => {
            let q = ctx.rack()?;
            let guard = ctx.guard(pr::HOLOMORPH_GUARD);
            let hol = pr::holomorph(&q, guard)?;
            let subracks = pr::enumerate_regular_subracks(&hol);
            let pairings = pr::enumerate_pairings(&q, guard)?;
            let mut round_trip = true;
            for h in &subracks {
                let p = pr::pairing_from_subrack(&hol, h)?;
                round_trip &= pr::subrack_from_pairing(&hol, &p)? == *h;
            }
            for p in &pairings {
                let h = pr::subrack_from_pairing(&hol, p)?;
                round_trip &= pr::pairing_from_subrack(&hol, &h)? == *p;
            }
            let ok = round_trip && subracks.len() == pairings.len();
            report(
                json!({ "regular_subracks": subracks.len(), "pairings": pairings.len(), "round_trip": round_trip, "holds": ok }),
                ok,
            )
        }
        "group-rack-equivalence" => {
            let g = ctx.group()?;
            let opts = EnumerateOptions {
                pointed_only: false,
                max_size: ctx.guard(avg::ENUMERATION_GUARD),
            };
            let on_group = avg::enumerate_averaging(Carrier::Group(&g), opts)?;
            let rack = g.conjugation_rack();
            let on_rack = avg::enumerate_averaging(Carrier::Rack(&rack), opts)?;
            let ok = on_group == on_rack;
            report(json!({ "group": on_group.len(), "rack": on_rack.len(), "holds": ok }), ok)
        }
        "graph-criteria" => {
            let g = ctx.group()?;
            guard_size(g.order(), ctx.guard(5), "graph-criteria group order")?;
            let mut mismatches = 0usize;
            let mut averaging = 0usize;
            for a in magma::all_maps(g.order()) {
                let is_avg = avg::is_averaging(Carrier::Group(&g), &a)?.holds;
                let gc = avg::graph_check(&g, &a)?;
                averaging += usize::from(is_avg);
                if gc.graph_subrack != is_avg || gc.transported_subrack != is_avg {
                    mismatches += 1;
                }
            }
            report(json!({ "averaging": averaging, "mismatches": mismatches, "holds": mismatches == 0 }), mismatches == 0)
        }
        "hopf-bijection" => {
            let g = ctx.group()?;
            guard_size(g.order(), ctx.guard(6), "hopf-bijection group order")?;
            let mut hopf = 0usize;
            let mut mismatches = 0usize;
            for a in magma::all_maps(g.order()) {
                let b = ga::extend_operator(&g, &a)?;
                let is_hopf = ga::is_hopf_averaging(&g, &b)?.holds;
                let is_avg = avg::is_averaging(Carrier::Group(&g), &a)?.holds;
                hopf += usize::from(is_hopf);
                if is_hopf != is_avg || ga::restrict_operator(&g, &b)? != a {
                    mismatches += 1;
                }
            }
            report(json!({ "hopf_averaging": hopf, "mismatches": mismatches, "holds": mismatches == 0 }), mismatches == 0)
        }
        "ybe-iff" => {
            let q = ctx.rack()?;
            guard_size(q.size(), ctx.guard(5), "ybe-iff rack size")?;
            let s = ybe::braided_from_rack(&q)?;
            let is_rack = magma::is_rack(&q);
            let is_solution = ybe::is_ybe_solution(&s).holds;
            let mut mismatches = 0usize;
            if is_rack {
                for a in magma::all_maps(q.size()) {
                    let lhs = ybe::is_braided_averaging(&s, &a)?.holds;
                    if lhs != avg::is_averaging(Carrier::Rack(&q), &a)?.holds {
                        mismatches += 1;
                    }
                }
            }
            let ok = is_rack == is_solution && mismatches == 0;
            report(
                json!({ "is_rack": is_rack, "is_solution": is_solution, "averaging_mismatches": mismatches, "holds": ok }),
                ok,
            )
        }
        "braided-lie-iff" => {
            let g = ctx.structure()?;
            let ybe_holds = braided::ybe_linear_check(&braided::braided_from_lie(&g)?)?;
            let jacobi = lb::satisfies_jacobi(&g);
            report(json!({ "ybe": ybe_holds, "jacobi": jacobi, "holds": ybe_holds == jacobi }), ybe_holds == jacobi)
        }
        other => Err(unknown(Verb::Check, other)),
    }
}

fn guard_size(size: usize, limit: usize, what: &'static str) -> Result<(), Failure> {
    if size > limit {
        return Err(Error::GuardExceeded { what, size, limit }.into());
    }
    Ok(())
}

fn export(ctx: &Ctx, subject: &str) -> Outcome {
    match subject {
        "rack" => {
            let kind = ctx.kind()?;
            let q = match kind {
                "trivial" | "flip" => {
                    let n = ctx.cli.size.ok_or_else(|| Failure::input("missing --size"))?;
                    if n == 0 {
                        return Err(Failure::input("--size must be positive"));
                    }
                    magma::standard_rack(if kind == "flip" {
                        StandardRack::Flip(n)
                    } else {
                        StandardRack::Trivial(n)
                    })?
                }
                "takasaki" | "conjugation" => {
                    let g = match &ctx.cli.name {
                        Some(name) => named_group(name)?,
                        None => ctx.group()?,
                    };
                    magma::standard_rack(if kind == "takasaki" {
                        StandardRack::Takasaki(&g)
                    } else {
                        StandardRack::Conjugation(&g)
                    })?
                }
                other => return Err(Failure::input(format!("unknown rack kind {other:?}"))),
            };
            report(magma_json(&q), true)
        }
        "group" => {
            let name = ctx.cli.name.as_deref().ok_or_else(|| Failure::input("missing --name"))?;
            report(io::GroupDto::from_group(&named_group(name)?), true)
        }
        "algebra" => {
            let name = ctx.cli.name.as_deref().ok_or_else(|| Failure::input("missing --name"))?;
            let s = match name {
                "sl2" => lx::sl2(),
                "so3" => lx::so3(),
                "d2" => lx::d2_leibniz(),
                "nonabelian2" => lx::nonabelian2(),
                other => match other.strip_prefix("abelian") {
                    Some(d) => lx::abelian(d.parse().map_err(|_| Failure::input(format!("bad dimension in {other:?}")))?),
                    None => return Err(Failure::input(format!("unknown algebra {other:?}"))),
                },
            };
            report(structure_json(&s), true)
        }
        other => Err(unknown(Verb::Export, other)),
    }
}

fn named_group(name: &str) -> Result<FiniteGroup, Failure> {
    groups::small_groups(8)
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, g)| g)
        .ok_or_else(|| Failure::input(format!("unknown group {name:?}")))
}

fn unknown(verb: Verb, subject: &str) -> Failure {
    let verb = verb.to_possible_value().expect("named verb");
    Failure::input(format!("`{}` has no subject {subject:?}", verb.get_name()))
}

pub fn dispatch(cli: &Cli) -> Outcome {
    let ctx = Ctx { cli };
    let subject = cli.subject.as_str();
    match cli.verb {
        Verb::Verify => verify(&ctx, subject),
        Verb::Enumerate => enumerate(&ctx, subject),
        Verb::Construct => construct(&ctx, subject),
        Verb::Check => check(&ctx, subject),
        Verb::Export => export(&ctx, subject),
    }
}

fn render_table(v: &Value) -> String {
    let grid = |rows: &[Value]| -> Option<String> {
        let rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.as_array().map(|c| c.iter().map(|x| x.to_string()).collect()))
            .collect::<Option<_>>()?;
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        Some(
            rows.iter()
                .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    };
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, val)| match val {
                Value::Array(rows) if !rows.is_empty() && rows.iter().all(Value::is_array) => match grid(rows) {
                    Some(g) => format!("{k}:\n{g}"),
                    None => format!("{k}: {val}"),
                },
                _ => format!("{k}: {val}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, out: Output, stdout: &mut dyn Write) -> std::io::Result<i32> {
    let (text, code) = match out {
        Output::Report(v, ok) => {
            let body = match cli.format {
                Format::Json => v.to_string(),
                Format::Table => render_table(&v),
            };
            (format!("{body}\n"), if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Output::Lines(items) => {
            let sep = if cli.format == Format::Table { "\n\n" } else { "\n" };
            let body: Vec<String> = items
                .iter()
                .map(|v| match cli.format {
                    Format::Json => v.to_string(),
                    Format::Table => render_table(v),
                })
                .collect();
            let mut text = body.join(sep);
            if !text.is_empty() {
                text.push('\n');
            }
            (text, EXIT_OK)
        }
    };
    match &cli.output {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(code)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(out) => match emit(&cli, out, stdout) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: writing output: {e}");
                EXIT_INPUT
            }
        },
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

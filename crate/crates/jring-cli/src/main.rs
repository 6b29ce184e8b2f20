//! `jring`: command-line access to the library. Every verb takes `--json`.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 bad usage or
//! input.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use jring::adjquot::{coinvariants, component_quotient, o2_model, s3_root_lattice, LatticeAuto};
use jring::classgrp::{
    a_value, centralizer, levi_candidates, poincare_by_enumeration, poincare_polynomial,
    FactorKind, Family, LieType, Partition, WeylType,
};
use jring::exact::{poly_divides_power, Cyclotomic, HalfLaurent};
use jring::fingroup::{FinGroup, GAction};
use jring::jmodels::{
    closure_test, fiber_image_rank, unique_nonisomorphism_locus, BlockAlgebraModel,
};
use jring::ksquare::{check_family, idempotent_family, KClass, Square};
use jring::repring::{
    fundamental_character, verify_presentation, Fundamental, RingFamily, RingSpec,
};
use jring::rigid::{
    check_structure, load_example, phi_diagonal_product, rigid_determinant, vanishing_vs_poincare,
};
use jring::{Error, Result};

#[derive(Parser)]
#[command(
    name = "jring",
    version,
    about = "Exact computations for asymptotic Hecke algebra combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args)]
struct GroupAction {
    /// Group spec such as Z2, Z2xZ2, S3, Z2xS3.
    #[arg(long)]
    group: String,
    /// JSON list with one permutation of the points per group generator.
    #[arg(long)]
    action: String,
}

#[derive(Subcommand)]
enum Command {
    /// Reductive centralizer, component group, a-value and Levi candidates of a unipotent class.
    Centralizer {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: u32,
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        out: Output,
    },
    /// Rank-one idempotent family in K_Γ(Y×Y) and its contract check.
    Idempotents {
        #[command(flatten)]
        ga: GroupAction,
        #[command(flatten)]
        out: Output,
    },
    /// Specialization at s of an orbit class or of a named idempotent.
    Specialize {
        #[command(flatten)]
        ga: GroupAction,
        /// Orbit base pair "x,z".
        #[arg(long, conflicts_with = "idempotent")]
        orbit: Option<String>,
        /// Name of a member of the idempotent family.
        #[arg(long)]
        idempotent: Option<String>,
        /// Group element, by index or label; all elements when omitted.
        #[arg(long)]
        at: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Torus character of a fundamental representation.
    Char {
        /// Sp, SO, SOodd, SOeven, O, Oeven, Oodd, Spin, Pin, GL, SL, PGL.
        #[arg(long)]
        group: String,
        #[arg(long)]
        rank: usize,
        /// v2, v2+, delta+, delta-, delta, pi, det, V(3).
        #[arg(long)]
        which: Option<String>,
        /// Check the generators-and-relations presentation.
        #[arg(long)]
        presentation: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Block-algebra models over character rings.
    Jmodel {
        /// sl2-j0, bdd-sp6 or full-2.
        #[arg(long)]
        name: String,
        /// Point z of the torus: an integer, zetaN, zetaN^k, optionally negated.
        #[arg(long)]
        fiber: Option<String>,
        /// Number of random products to test for closure.
        #[arg(long)]
        closure_test: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Report where the model fails to be isomorphic to its full matrix algebra.
        #[arg(long)]
        locus: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Rigid pairing examples: sl2, pgl2, so7.
    Rigid {
        #[arg(long)]
        example: String,
        /// Run the structure and vanishing-locus checks.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Poincaré polynomial of a finite Weyl group.
    Poincare {
        #[arg(long = "type", requires = "rank", conflicts_with = "weyl")]
        family: Option<String>,
        #[arg(long)]
        rank: Option<u32>,
        /// Product type such as A1xA1.
        #[arg(long)]
        weyl: Option<String>,
        /// Compare with the length generating function.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Coinvariant torus of a lattice automorphism, or the component quotient of a fixture.
    Coinvariants {
        /// Rows separated by ';', entries by ','.
        #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
        matrix: Option<String>,
        /// o2 or s3-root.
        #[arg(long)]
        fixture: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Smallest k with den dividing P_W(q)^k, after cancelling num.
    FdegCheck {
        #[arg(long, default_value = "1")]
        num: String,
        #[arg(long)]
        den: String,
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = 32)]
        bound: u32,
        #[command(flatten)]
        out: Output,
    },
}

/// What a verb produced: a text rendering, a JSON report, and whether its
/// checks held.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            ok: true,
        }
    }
}

fn lie_type(family: &str, rank: u32) -> Result<LieType> {
    LieType::new(family.parse::<Family>()?, rank)
}

fn weyl_of(family: &str, rank: u32) -> Result<Vec<WeylType>> {
    WeylType::parse_product(&format!("{}{rank}", family.trim()))
}

fn build_action(ga: &GroupAction) -> Result<GAction> {
    let g = FinGroup::standard(&ga.group)?;
    let perms: Vec<Vec<usize>> =
        serde_json::from_str(&ga.action).map_err(|e| Error::Parse(format!("action: {e}")))?;
    let points = perms.first().map_or(1, Vec::len);
    GAction::from_generators(g, points, &perms)
}

fn element(g: &FinGroup, s: &str) -> Result<usize> {
    if let Ok(i) = s.parse::<usize>() {
        if i < g.order() {
            return Ok(i);
        }
    }
    (0..g.order())
        .find(|&x| g.label(x) == s)
        .ok_or_else(|| Error::invalid(format!("no element {s:?} in {}", g.name())))
}

/// Integers, zetaN, zetaN^k, with an optional leading minus sign.
fn parse_point(s: &str) -> Result<Cyclotomic> {
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let bad = || Error::Parse(format!("bad point {s:?}"));
    let z = if let Some(r) = body.strip_prefix("zeta") {
        let (n, k) = r.split_once('^').unwrap_or((r, "1"));
        let n: u32 = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Cyclotomic::zeta_pow(n, k.parse().map_err(|_| bad())?)
    } else {
        Cyclotomic::from_int(body.parse().map_err(|_| bad())?)
    };
    Ok(if neg { z.neg_ref() } else { z })
}

fn class_json(t: &KClass) -> Result<Value> {
    t.to_json()
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    let width = rows
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(1);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_centralizer(family: &str, rank: u32, partition: &str) -> Result<Report> {
    let t = lie_type(family, rank)?;
    let u: Partition = partition.parse()?;
    let c = centralizer(t, &u)?;
    let a = a_value(t, &u)?;
    let factors: Vec<Value> = c
        .factors
        .iter()
        .map(|f| match f.kind {
            FactorKind::Z2 => json!(["Z/2", 2]),
            k => json!([format!("{k:?}"), f.size]),
        })
        .collect();
    let levis = match levi_candidates(t, &u) {
        Ok(l) => l,
        Err(Error::Unsupported(_)) => Vec::new(),
        Err(e) => return Err(e),
    };
    let levi_json: Vec<Value> = levis
        .iter()
        .map(|l| {
            json!({
                "levi": l.levi_text(),
                "classical_factor": l.classical_factor,
                "splits": l.splits,
                "discrete": l.is_discrete(),
                "torus": l.is_torus(),
            })
        })
        .collect();
    let mut text = format!(
        "{} {}\ncentralizer: {}\ncomponent group order: {}\na-value: {a}\ndim Z(u): {}",
        t.group_name(),
        u,
        c.text(),
        c.component_group_order(),
        c.dim
    );
    for l in &levis {
        text.push_str(&format!("\nLevi: {}", l.levi_text()));
        if l.multiple_splits() {
            text.push_str(&format!(" ({} splits)", l.splits.len()));
        }
    }
    let json = json!({
        "group": t.group_name(),
        "type": t.to_string(),
        "partition": u.parts(),
        "factors": factors,
        "centralizer": c.text(),
        "component_group_order": c.component_group_order(),
        "a_value": a,
        "centralizer_dim": c.dim,
        "very_even": c.very_even,
        "levi_candidates": levi_json,
    });
    Ok(Report::ok(text, json))
}

fn run_idempotents(ga: &GroupAction) -> Result<Report> {
    let a = build_action(ga)?;
    let sq = Square::new(a);
    let fam = idempotent_family(&sq)?;
    let check = check_family(&fam)?;
    let mut text = String::new();
    let mut members = Vec::new();
    for (name, t) in &fam {
        text.push_str(&format!("t_{name} = {t}\n"));
        members.push(json!({ "name": name, "class": class_json(t)? }));
    }
    text.push_str(if check.ok() {
        "check: ok"
    } else {
        "check: FAILED"
    });
    for f in &check.failures {
        text.push_str(&format!("\n  {f}"));
    }
    let json = json!({ "members": members, "ok": check.ok(), "failures": check.failures });
    Ok(Report {
        text,
        json,
        ok: check.ok(),
    })
}

fn run_specialize(
    ga: &GroupAction,
    orbit: Option<&str>,
    idem: Option<&str>,
    at: Option<&str>,
) -> Result<Report> {
    let a = build_action(ga)?;
    let g = a.group().clone();
    let sq = Square::new(a);
    let class = match (orbit, idem) {
        (Some(o), _) => {
            let (x, z) = o
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("orbit {o:?} is not \"x,z\"")))?;
            let p = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            };
            let (x, z) = (p(x)?, p(z)?);
            if x >= sq.points() || z >= sq.points() {
                return Err(Error::invalid("orbit point out of range"));
            }
            KClass::orbit_class(&sq, x, z)
        }
        (None, Some(name)) => idempotent_family(&sq)?
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
            .ok_or_else(|| Error::invalid(format!("no idempotent named {name:?}")))?,
        (None, None) => KClass::diagonal(&sq),
    };
    let elements: Vec<usize> = match at {
        Some(s) => vec![element(&g, s)?],
        None => (0..g.order()).collect(),
    };
    let mut text = Vec::new();
    let mut out = Vec::new();
    for s in elements {
        let m = class.specialize_at(s);
        let cells: Vec<Vec<String>> = m
            .entries
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        text.push(format!(
            "s = {} on Y^s = {:?}\n{}",
            g.label(s),
            m.points,
            matrix_text(&cells)
        ));
        out.push(json!({ "s": g.label(s), "points": m.points, "matrix": cells, "rank": m.rank() }));
    }
    Ok(Report::ok(
        text.join("\n"),
        json!({ "specializations": out }),
    ))
}

fn run_char(group: &str, rank: usize, which: Option<&str>, presentation: bool) -> Result<Report> {
    let spec = RingSpec::new(group.parse::<RingFamily>()?, rank)?;
    let mut text = Vec::new();
    let mut json = json!({ "group": spec.group_name(), "rank": rank });
    let mut ok = true;
    if let Some(w) = which {
        let c = fundamental_character(spec, w.parse::<Fundamental>()?)?;
        text.push(format!("{w} = {c}\ndimension {}", c.dimension()));
        json["which"] = json!(w);
        json["character"] = json!(c.to_string());
        json["dimension"] = json!(c.dimension());
    }
    if presentation {
        let r = verify_presentation(spec)?;
        ok = r.all_hold();
        for c in &r.checks {
            text.push(format!(
                "{}: {}",
                c.name,
                if c.holds { "holds" } else { "FAILS" }
            ));
        }
        json["presentation"] = json!(r
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "holds": c.holds}))
            .collect::<Vec<_>>());
    }
    if text.is_empty() {
        return Err(Error::invalid("give --which or --presentation"));
    }
    Ok(Report {
        text: text.join("\n"),
        json,
        ok,
    })
}

fn run_jmodel(
    name: &str,
    fiber: Option<&str>,
    trials: Option<usize>,
    seed: u64,
    locus: bool,
) -> Result<Report> {
    let model = std::sync::Arc::new(BlockAlgebraModel::fixture(name)?);
    let mut text = vec![format!(
        "{name}: blocks {:?}, size {}",
        model.block_sizes(),
        model.size()
    )];
    let mut json = json!({ "name": name, "blocks": model.block_sizes(), "size": model.size() });
    let mut ok = true;
    if let Some(p) = fiber {
        let z = parse_point(p)?;
        let r = fiber_image_rank(&model, &z)?;
        text.push(format!(
            "fiber at {}: image dimension {} of {}{}",
            r.point,
            r.dimension,
            r.ambient,
            if r.block_diagonal {
                ", block-diagonal"
            } else {
                ""
            }
        ));
        json["fiber"] = json!({
            "point": r.point.to_string(),
            "dimension": r.dimension,
            "ambient": r.ambient,
            "block_diagonal": r.block_diagonal,
            "family_size": r.family_size,
        });
    }
    if let Some(n) = trials {
        let r = closure_test(&model, n, seed)?;
        ok &= r.passed == r.trials;
        text.push(format!(
            "closure: {}/{} products stay in the model",
            r.passed, r.trials
        ));
        json["closure"] = json!({ "trials": r.trials, "passed": r.passed });
    }
    if locus {
        let l = unique_nonisomorphism_locus(&model)?;
        for c in &l {
            text.push(format!(
                "non-isomorphic at z + 1/z = {}: {}",
                c.x, c.description
            ));
        }
        json["locus"] = json!(l
            .iter()
            .map(|c| json!({"trace": c.x, "description": c.description}))
            .collect::<Vec<_>>());
    }
    Ok(Report {
        text: text.join("\n"),
        json,
        ok,
    })
}

fn run_rigid(name: &str, check: bool) -> Result<Report> {
    let e = load_example(name)?;
    let structure = check_structure(&e);
    let mut text = vec![format!(
        "{} ({}), {} x {}",
        e.name,
        e.group,
        e.size(),
        e.size()
    )];
    let mut json = json!({
        "name": e.name,
        "group": e.group,
        "size": e.size(),
        "det_b": structure.det_b.to_string(),
        "block_sizes": structure.block_sizes,
    });
    text.push(format!("det B = {}", structure.det_b));
    let mut ok = true;
    if e.phi.is_some() {
        let d = rigid_determinant(&e)?;
        text.push(format!("det = {}", d.factored_text()));
        json["det"] = json!(d.factored_text());
        json["det_expanded"] = json!(d.to_string());
        json["phi_diagonal_product"] = json!(phi_diagonal_product(&e)?.factored_text());
    }
    if check {
        ok &= structure.ok();
        text.push(format!("blocks {:?}", structure.block_sizes));
        for f in &structure.failures {
            text.push(format!("structure: {f}"));
        }
        json["structure_ok"] = json!(structure.ok());
        json["failures"] = json!(structure.failures);
        if e.phi.is_some() {
            let v = vanishing_vs_poincare(&e, &e.weyl_factors()?)?;
            ok &= v.holds();
            text.push(format!(
                "vanishing locus inside P_W = 0: {}",
                match v.power {
                    Some(k) if v.holds() => format!("yes, det | P_W^{k}"),
                    _ => format!("NO, residual {}", v.residual),
                }
            ));
            json["poincare"] = json!(v.poincare.to_string());
            json["vanishing_ok"] = json!(v.holds());
        }
        text.push(if ok {
            "check: ok".into()
        } else {
            "check: FAILED".into()
        });
    }
    Ok(Report {
        text: text.join("\n"),
        json,
        ok,
    })
}

fn run_poincare(
    family: Option<&str>,
    rank: Option<u32>,
    weyl: Option<&str>,
    check: bool,
) -> Result<Report> {
    let factors = match (family, rank, weyl) {
        (_, _, Some(w)) => WeylType::parse_product(w)?,
        (Some(f), Some(r), None) => weyl_of(f, r)?,
        _ => return Err(Error::invalid("give --type and --rank, or --weyl")),
    };
    let p = poincare_polynomial(&factors);
    let at_one = p.eval(&Cyclotomic::one())?;
    let mut text = format!("P_W(q) = {p}\nP_W(1) = {at_one}");
    let mut json = json!({ "polynomial": p.to_string(), "value_at_1": at_one.to_string() });
    let mut ok = true;
    if check {
        let e = poincare_by_enumeration(&factors, 200_000)?;
        ok = e == p;
        text.push_str(if ok {
            "\nlength generating function agrees"
        } else {
            "\nlength generating function DIFFERS"
        });
        json["enumeration_agrees"] = json!(ok);
    }
    Ok(Report { text, json, ok })
}

fn run_coinvariants(matrix: Option<&str>, fixture: Option<&str>) -> Result<Report> {
    if let Some(m) = matrix {
        let a = LatticeAuto::parse(m)?;
        let r = coinvariants(&a);
        let torsion: Vec<String> = r.torsion.iter().map(|t| t.to_string()).collect();
        let h = if torsion.is_empty() {
            "trivial".into()
        } else {
            torsion
                .iter()
                .map(|t| format!("Z/{t}"))
                .collect::<Vec<_>>()
                .join(" x ")
        };
        let text = format!(
            "order {}\nd = {}\nH = {h}\nfixed rank {}",
            a.order(),
            r.free_rank,
            r.fixed_rank
        );
        let json = json!({
            "order": a.order(),
            "free_rank": r.free_rank,
            "torsion": torsion,
            "fixed_rank": r.fixed_rank,
        });
        return Ok(Report {
            text,
            json,
            ok: r.free_rank == r.fixed_rank,
        });
    }
    let (g, acts) = match fixture.unwrap_or_default() {
        "o2" => o2_model(),
        "s3-root" => s3_root_lattice(),
        other => {
            return Err(Error::invalid(format!(
                "unknown fixture {other:?} (o2, s3-root)"
            )))
        }
    };
    let comps = component_quotient(&g, &acts)?;
    let mut text = Vec::new();
    let mut out = Vec::new();
    for c in &comps {
        let torsion: Vec<String> = c.torsion.iter().map(|t| t.to_string()).collect();
        text.push(format!(
            "class of {} (size {}): d = {}, H torsion {:?}, |centralizer| = {}, residual action of order {}",
            c.class_label, c.class_size, c.d, torsion, c.centralizer_order, c.residual_order
        ));
        out.push(json!({
            "class": c.class_label,
            "class_size": c.class_size,
            "d": c.d,
            "torsion": torsion,
            "centralizer_order": c.centralizer_order,
            "residual_order": c.residual_order,
        }));
    }
    let ok = comps.iter().map(|c| c.class_size).sum::<usize>() == g.order();
    Ok(Report {
        text: text.join("\n"),
        json: json!({ "components": out }),
        ok,
    })
}

fn run_fdeg(num: &str, den: &str, family: &str, rank: u32, bound: u32) -> Result<Report> {
    let num = HalfLaurent::parse(num)?;
    let den = HalfLaurent::parse(den)?;
    if den.is_zero() {
        return Err(Error::ZeroInput("denominator"));
    }
    let reduced = if num.is_zero() {
        HalfLaurent::one()
    } else {
        den.exact_div(&den.gcd(&num)).unwrap_or(den.clone())
    };
    let factors = weyl_of(family, rank)?;
    let p = poincare_polynomial(&factors);
    let k = poly_divides_power(&reduced, &p, bound)?;
    let text = match k {
        Some(k) => format!("denominator {reduced} divides P_W^{k}, P_W = {p}"),
        None => format!("no k <= {bound} with {reduced} dividing P_W^k, P_W = {p}"),
    };
    let json = json!({ "denominator": reduced.to_string(), "poincare": p.to_string(), "k": k, "bound": bound });
    Ok(Report {
        text,
        json,
        ok: k.is_some(),
    })
}

fn dispatch(cmd: &Command) -> (Result<Report>, Output) {
    match cmd {
        Command::Centralizer {
            family,
            rank,
            partition,
            out,
        } => (run_centralizer(family, *rank, partition), *out),
        Command::Idempotents { ga, out } => (run_idempotents(ga), *out),
        Command::Specialize {
            ga,
            orbit,
            idempotent,
            at,
            out,
        } => (
            run_specialize(ga, orbit.as_deref(), idempotent.as_deref(), at.as_deref()),
            *out,
        ),
        Command::Char {
            group,
            rank,
            which,
            presentation,
            out,
        } => (
            run_char(group, *rank, which.as_deref(), *presentation),
            *out,
        ),
        Command::Jmodel {
            name,
            fiber,
            closure_test,
            seed,
            locus,
            out,
        } => (
            run_jmodel(name, fiber.as_deref(), *closure_test, *seed, *locus),
            *out,
        ),
        Command::Rigid {
            example,
            check,
            out,
        } => (run_rigid(example, *check), *out),
        Command::Poincare {
            family,
            rank,
            weyl,
            check,
            out,
        } => (
            run_poincare(family.as_deref(), *rank, weyl.as_deref(), *check),
            *out,
        ),
        Command::Coinvariants {
            matrix,
            fixture,
            out,
        } => (
            run_coinvariants(matrix.as_deref(), fixture.as_deref()),
            *out,
        ),
        Command::FdegCheck {
            num,
            den,
            family,
            rank,
            bound,
            out,
        } => (run_fdeg(num, den, family, *rank, *bound), *out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = dispatch(&cli.command);
    match result {
        Ok(r) => {
            let body = if out.json {
                serde_json::to_string_pretty(&r.json).expect("JSON values serialize")
            } else {
                r.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = writeln!(std::io::stdout(), "{body}");
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if out.json {
                let _ = writeln!(std::io::stdout(), "{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(if e.is_math() { 1 } else { 2 })
        }
    }
}

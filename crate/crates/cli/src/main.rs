//! `zk`: equivariant invariants of real moment-angle complexes.

mod spec;
mod suite;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use zk_core::action::{fixed_point_shape, strong_quotient, validate_action, vertex_orbits, ComplexAction};
use zk_core::bredon::BredonContext;
use zk_core::coeffsys::{hom_space, homology_systems, template, CoefficientSystem};
use zk_core::doman::{injective_envelope, injective_resolution};
use zk_core::groups::{PermGroup, Subgroup};
use zk_core::orbitcat::OrbitCategory;
use zk_core::simplicial::SimplicialComplex;
use zk_core::zcomplex::{fixed_subcomplex, triangulate, ChainComplexQ, MAX_VERTICES_ENV};

#[derive(Parser, Debug)]
#[command(name = "zk", version, about = "Equivariant invariants of real moment-angle complexes over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads for the parallel inner solves.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Progress and timings on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,

    /// Override the vertex bound for moment-angle triangulations.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,

    /// Include matrices and bases in the output.
    #[arg(long, global = true)]
    matrices: bool,
}

#[derive(Args, Debug, Clone, Default)]
struct Inputs {
    /// boundary:m, simplex:m, ngon:n, star, trilinder or a JSON file.
    #[arg(long)]
    complex: Option<String>,

    /// gens=(0 1 2 3),(0 1)(2 3), aut, trivial, symmetric or a JSON file.
    #[arg(long)]
    group: Option<String>,

    /// Number of points the group acts on, when there is no complex.
    #[arg(long)]
    degree: Option<usize>,

    /// gens=... or object:i.
    #[arg(long)]
    subgroup: Option<String>,

    /// constant, m, zero, homology:q, atom:i or a JSON file.
    #[arg(long)]
    coeff: Option<String>,

    /// Restrict to one homological degree.
    #[arg(long)]
    dim: Option<usize>,

    /// Maximum number of injective terms in a resolution.
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the group acts on the complex.
    Validate(Inputs),
    /// Automorphism group of the complex.
    Aut(Inputs),
    /// Vertex orbits of the group.
    Orbits(Inputs),
    /// Strong quotient K//G (or K//H with --subgroup).
    Quotient(Inputs),
    /// Fixed-point sets of every subgroup class (or of --subgroup).
    Fixed(Inputs),
    /// Rational homology of the moment-angle complex.
    Homology(Inputs),
    /// Orbit category of the group.
    Orbitcat(Inputs),
    /// A coefficient-system JSON template (the constant system).
    CoeffsysTemplate(Inputs),
    /// dim Hom(H_q, M) for the homology systems of the complex.
    Hom(Inputs),
    /// Injective envelope of a coefficient system.
    Envelope(Inputs),
    /// Injective resolution of a coefficient system.
    Resolve(Inputs),
    /// Ext table of the homology systems against M.
    Ext(Inputs),
    /// Bredon cohomology, with the spectral-sequence comparison.
    Bredon(Inputs),
    /// Reproduce the worked examples and report pass/fail per item.
    PaperSuite,
}

struct Ctx {
    verbose: bool,
    matrices: bool,
    start: Instant,
}

impl Ctx {
    fn log(&self, msg: &str) {
        if self.verbose {
            eprintln!("[{:>8.3}s] {msg}", self.start.elapsed().as_secs_f64());
        }
    }
}

struct Loaded {
    complex: Option<SimplicialComplex>,
    group: Option<PermGroup>,
}

impl Inputs {
    fn load(&self) -> Result<Loaded> {
        let complex = self.complex.as_deref().map(spec::complex).transpose()?;
        let group = self
            .group
            .as_deref()
            .map(|g| spec::group(g, complex.as_ref(), self.degree))
            .transpose()?;
        Ok(Loaded { complex, group })
    }

    fn complex(&self) -> Result<SimplicialComplex> {
        self.load()?.complex.ok_or_else(|| anyhow!("--complex is required"))
    }

    fn action(&self) -> Result<ComplexAction> {
        let l = self.load()?;
        let k = l.complex.ok_or_else(|| anyhow!("--complex is required"))?;
        let g = l.group.ok_or_else(|| anyhow!("--group is required"))?;
        Ok(validate_action(&k, &g)?)
    }

    fn group(&self) -> Result<PermGroup> {
        self.load()?.group.ok_or_else(|| anyhow!("--group is required"))
    }

    fn coeff(&self, cat: &Arc<OrbitCategory>, action: Option<&ComplexAction>) -> Result<Arc<CoefficientSystem>> {
        let spec = self.coeff.as_deref().ok_or_else(|| anyhow!("--coeff is required"))?;
        Ok(Arc::new(spec::coefficients(spec, cat, action)?))
    }

    fn optional_action(&self) -> Result<Option<ComplexAction>> {
        if self.complex.is_some() {
            self.action().map(Some)
        } else {
            Ok(None)
        }
    }
}

fn perms(group: &PermGroup, h: &Subgroup) -> Vec<String> {
    group.small_generating_set(h).iter().map(ToString::to_string).collect()
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn homology_report(z: &ChainComplexQ, dim: Option<usize>, matrices: bool) -> Value {
    let betti = z.betti_numbers();
    let cells: Vec<usize> = (0..z.num_dims()).map(|d| z.num_cells(d)).collect();
    let mut out = json!({
        "betti": betti,
        "cells": cells,
        "euler_characteristic": z.euler_characteristic(),
    });
    if matrices {
        let degrees: Vec<usize> = match dim {
            Some(d) => vec![d],
            None => (0..z.num_dims()).collect(),
        };
        let bases: Vec<Value> = degrees
            .iter()
            .map(|&n| json!({"dim": n, "cycles": z.homology(n).reps.to_rows()}))
            .collect();
        out["cycle_bases"] = json!(bases);
    }
    if let Some(d) = dim {
        out["betti_at_dim"] = json!(betti.get(d).copied().unwrap_or(0));
    }
    out
}

fn category_for(group: &PermGroup) -> Result<Arc<OrbitCategory>> {
    Ok(Arc::new(OrbitCategory::new(group)?))
}

fn run(command: &Command, ctx: &Ctx) -> Result<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match command {
        Command::Validate(i) => {
            let a = i.action()?;
            ok(json!({
                "valid": true,
                "vertices": a.complex().num_vertices(),
                "f_vector": a.complex().f_vector(),
                "group_order": a.group().order(),
            }))
        }
        Command::Aut(i) => {
            let k = i.complex()?;
            let g = zk_core::action::aut_group(&k)?;
            ok(json!({
                "order": g.order(),
                "generators": g.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "group": g,
            }))
        }
        Command::Orbits(i) => {
            let a = i.action()?;
            let orbits = vertex_orbits(a.group().degree(), a.group().generators());
            let ghosts: Vec<bool> = orbits.iter().map(|o| !a.complex().is_face(o)).collect();
            ok(json!({"orbits": orbits, "ghost": ghosts}))
        }
        Command::Quotient(i) => {
            let a = i.action()?;
            let a = match &i.subgroup {
                Some(s) => a.restrict(&spec::subgroup(s, a.group(), None)?),
                None => a,
            };
            ok(serde_json::to_value(strong_quotient(&a))?)
        }
        Command::Fixed(i) => {
            let a = i.action()?;
            let g = a.group();
            let subgroups: Vec<Subgroup> = match &i.subgroup {
                Some(s) => vec![spec::subgroup(s, g, None)?],
                None => g.subgroup_classes()?.into_iter().map(|c| c.representative).collect(),
            };
            let entries = subgroups
                .iter()
                .map(|h| {
                    let shape = fixed_point_shape(&a, h);
                    let z = fixed_subcomplex(a.complex(), &g.small_generating_set(h))?;
                    Ok(json!({
                        "subgroup": perms(g, h),
                        "order": h.order(),
                        "betti": trim(z.betti_numbers()),
                        "k": shape.quotient.k,
                        "sphere": shape.sphere,
                        "description": shape.description,
                        "quotient": shape.quotient,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            ok(json!({"fixed": entries}))
        }
        Command::Homology(i) => {
            let l = i.load()?;
            let k = l.complex.ok_or_else(|| anyhow!("--complex is required"))?;
            let z = match (&l.group, &i.subgroup) {
                (Some(g), Some(s)) => {
                    validate_action(&k, g)?;
                    let h = spec::subgroup(s, g, None)?;
                    fixed_subcomplex(&k, &g.small_generating_set(&h))?
                }
                _ => triangulate(&k)?,
            };
            ctx.log(&format!("{} cells", z.total_cells()));
            ok(homology_report(&z, i.dim, ctx.matrices))
        }
        Command::Orbitcat(i) => {
            let g = i.group()?;
            let cat = category_for(&g)?;
            let mut out = serde_json::to_value(cat.summary())?;
            out["longest_chain_length"] = json!(g.longest_chain_length());
            ok(out)
        }
        Command::CoeffsysTemplate(i) => {
            let cat = category_for(&i.group()?)?;
            ok(serde_json::to_value(template(cat))?)
        }
        Command::Hom(i) => {
            let a = i.action()?;
            let cat = category_for(a.group())?;
            let m = i.coeff(&cat, Some(&a))?;
            let hs = homology_systems(&a, cat.clone())?;
            ctx.log("homology systems built");
            let degrees: Vec<usize> = match i.dim {
                Some(q) => vec![q],
                None => (0..hs.len()).collect(),
            };
            let mut dims = Vec::new();
            let mut bases = Vec::new();
            for &q in &degrees {
                let h = hs.get(q).ok_or_else(|| anyhow!("no homology in degree {q}"))?;
                let space = hom_space(h, &m)?;
                dims.push(space.dim);
                bases.push(space.basis);
            }
            let mut out = json!({
                "degrees": degrees,
                "hom": dims,
                "homology_dims": degrees.iter().map(|&q| hs[q].dims().to_vec()).collect::<Vec<_>>(),
            });
            if ctx.matrices {
                out["bases"] = serde_json::to_value(bases)?;
            }
            ok(out)
        }
        Command::Envelope(i) => {
            let g = i.group()?;
            let cat = category_for(&g)?;
            let action = i.optional_action()?;
            let m = i.coeff(&cat, action.as_ref())?;
            let env = injective_envelope(&m)?;
            let atoms: Vec<Value> = env
                .atoms
                .iter()
                .map(|a| json!({"object": a.rep.object, "order": cat.object_order(a.rep.object), "dim": a.rep.dim}))
                .collect();
            let mut out = json!({
                "source_dims": m.dims(),
                "dims": env.system().dims(),
                "atoms": atoms,
            });
            if ctx.matrices {
                out["embedding"] = serde_json::to_value(&env.embedding.components)?;
                out["system"] = serde_json::to_value(env.system().to_json())?;
            }
            ok(out)
        }
        Command::Resolve(i) => {
            let g = i.group()?;
            let cat = category_for(&g)?;
            let action = i.optional_action()?;
            let m = i.coeff(&cat, action.as_ref())?;
            let bound = g.longest_chain_length();
            let res = injective_resolution(&m, i.max_len.unwrap_or(bound))?;
            let atoms: Vec<Vec<Value>> = res
                .atoms
                .iter()
                .map(|t| t.iter().map(|a| json!({"object": a.object, "dim": a.dim})).collect())
                .collect();
            let mut out = json!({
                "source_dims": m.dims(),
                "length": res.len(),
                "longest_chain_length": bound,
                "terms": res.terms.iter().map(|t| t.dims().to_vec()).collect::<Vec<_>>(),
                "atoms": atoms,
                "exact": res.is_exact(),
            });
            if ctx.matrices {
                let maps: Vec<&Vec<_>> = res.maps.iter().map(|d| &d.components).collect();
                out["maps"] = serde_json::to_value(maps)?;
            }
            ok(out)
        }
        Command::Ext(i) | Command::Bredon(i) => {
            let a = i.action()?;
            let cat = category_for(a.group())?;
            let m = i.coeff(&cat, Some(&a))?;
            let bredon = BredonContext::new(&a, cat.clone())?;
            ctx.log("cells and homology systems built");
            let bound = a.group().longest_chain_length();
            let report = bredon.ucss(&m, i.max_len.unwrap_or(bound))?;
            ctx.log("spectral-sequence comparison done");
            let checks: serde_json::Map<String, Value> = report
                .checks
                .iter()
                .map(|c| (c.name.clone(), json!({"passed": c.passed, "detail": c.detail})))
                .collect();
            let mut out = json!({
                "ext": report.table.ext,
                "raw_hom": report.table.raw,
                "resolution_length": report.resolution_length,
            });
            if matches!(command, Command::Bredon(_)) {
                out["H"] = json!(report.cohomology);
                out["checks"] = Value::Object(checks);
                if ctx.matrices {
                    let cochain = zk_core::bredon::bredon_cochain(&bredon.cells, &m)?;
                    out["cochain_dims"] = json!(cochain.dims);
                    out["differentials"] = serde_json::to_value(&cochain.differentials)?;
                }
            }
            Ok((out, report.passed()))
        }
        Command::PaperSuite => {
            let report = suite::run(ctx.verbose)?;
            let passed = report.failed == 0;
            Ok((serde_json::to_value(report)?, passed))
        }
    }
}

fn emit(value: &Value, output: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Some(n) = cli.max_vertices {
        // Single-threaded here: no other thread reads the environment yet.
        std::env::set_var(MAX_VERTICES_ENV, n.to_string());
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let ctx = Ctx {
        verbose: cli.verbose,
        matrices: cli.matrices,
        start: Instant::now(),
    };
    match run(&cli.command, &ctx) {
        Ok((value, passed)) => {
            if let Err(e) = emit(&value, cli.output.as_ref()) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            ctx.log("done");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let value = json!({"error": format!("{e:#}")});
            let _ = emit(&value, cli.output.as_ref());
            ExitCode::from(1)
        }
    }
}

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multivirt_core::catalog::{self, CATALOG};
use multivirt_core::colorings::{build_system, enumerate_colorings, summarize, ColoringMode};
use multivirt_core::constructions::{covering, extract_component, multiplex};
use multivirt_core::invariants::report;
use multivirt_core::moves::{apply_move, find_moves, random_walk, replay, size_cap, MoveKind, MoveSite};
use multivirt_core::verify::{verify_theorems, Identity, VerifyConfig};
use multivirt_core::{canonical_form, parse_vgc, realize, Diagram, Error};

const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Parser)]
#[command(name = "multivirt", version, about = "Multiplexing, coverings and invariants of virtual link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Diagram as a VGC code, e.g. "O1+ U2+ O3+ U1+ O2+ U3+"
    #[arg(long)]
    code: Option<String>,
    /// Catalog fixture name
    #[arg(long)]
    name: Option<String>,
}

impl Input {
    fn diagram(&self) -> Result<Diagram, Error> {
        match (&self.code, &self.name) {
            (Some(code), _) => parse_vgc(code),
            (_, Some(name)) => catalog::fixture(name),
            _ => unreachable!("clap enforces one input"),
        }
    }
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    input: Input,
    /// Human-readable output instead of JSON
    #[arg(long)]
    pretty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Fox,
    Virtual,
    Constrained,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a code
    Parse(Common),
    /// Canonical form up to basepoints and relabeling
    Canon(Common),
    /// Genus of the diagram's surface
    Genus(Common),
    /// Planar realization with added virtual crossings
    Realize(Common),
    /// Writhe, n-writhes, linking numbers and lambda
    Invariants(Common),
    /// r-multiplexing L(D;r)
    Multiplex {
        #[command(flatten)]
        common: Common,
        #[arg(short, long, default_value_t = 2)]
        r: i64,
        /// Only the real and virtual crossing counts
        #[arg(long)]
        counts: bool,
        /// Include crossing and edge provenance
        #[arg(long)]
        provenance: bool,
    },
    /// r-th covering D^(r)
    Cover {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        r: i64,
    },
    /// One component with its self-crossings
    Component {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        i: usize,
    },
    /// Coloring counts by Smith normal form
    Colorings {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "fox")]
        mode: Mode,
        #[arg(short, long)]
        n: u64,
        /// List every coloring by exhaustive search
        #[arg(long)]
        enumerate: bool,
    },
    /// Reidemeister move sites, application and random walks
    Moves {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with_all = ["apply", "walk", "replay"])]
        find: bool,
        /// Site as JSON, e.g. '{"kind":"R1del","variant":0,"locus":[0,0]}'
        #[arg(long, conflicts_with_all = ["walk", "replay"])]
        apply: Option<String>,
        /// Number of random steps
        #[arg(long, requires = "seed", conflicts_with = "replay")]
        walk: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Trace as a JSON list of sites
        #[arg(long)]
        replay: Option<String>,
        /// Comma-separated move kinds (default: all for --find, all but FU for --walk)
        #[arg(long, value_delimiter = ',')]
        kinds: Vec<String>,
        #[arg(long, env = "MULTIVIRT_SIZE_CAP")]
        size_cap: Option<usize>,
    },
    /// Check the multiplexing identities on catalog knots
    Verify {
        #[arg(long, default_value = "all")]
        thm: String,
        /// Fixture names (default: every catalog knot)
        #[arg(long = "name")]
        names: Vec<String>,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        #[arg(long, default_value_t = 6)]
        n_max: u64,
        #[arg(long)]
        pretty: bool,
    },
    /// Fixture diagrams
    Catalog {
        #[arg(long, conflicts_with = "name")]
        list: bool,
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        pretty: bool,
    },
}

/// JSON payload plus the text shown with --pretty.
struct Output {
    json: Value,
    text: String,
}

fn out(json: Value, text: impl Into<String>) -> Output {
    Output { json, text: text.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = match &cli.command {
        Command::Parse(c) | Command::Canon(c) | Command::Genus(c) | Command::Realize(c) | Command::Invariants(c) => {
            c.pretty
        }
        Command::Multiplex { common, .. }
        | Command::Cover { common, .. }
        | Command::Component { common, .. }
        | Command::Colorings { common, .. }
        | Command::Moves { common, .. } => common.pretty,
        Command::Verify { pretty, .. } | Command::Catalog { pretty, .. } => *pretty,
    };
    match run(cli.command) {
        Ok((o, ok)) => {
            if pretty {
                println!("{}", o.text.trim_end());
            } else {
                println!("{}", o.json);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn code_output(d: &Diagram) -> Output {
    out(json!({ "code": d.to_string() }), d.to_string())
}

fn parse_kinds(names: &[String], default: BTreeSet<MoveKind>) -> Result<BTreeSet<MoveKind>, Error> {
    if names.is_empty() {
        return Ok(default);
    }
    names.iter().map(|s| s.trim().parse()).collect()
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse { token: "site".into(), reason: e.to_string() }
}

fn run(command: Command) -> Result<(Output, bool), Error> {
    let o = match command {
        Command::Parse(c) => {
            let d = c.input.diagram()?;
            let text = format!(
                "{d}\ncomponents {}, real {}, virtual {}",
                d.num_components(),
                d.num_real(),
                d.num_virtual()
            );
            out(
                json!({
                    "code": d.to_string(),
                    "components": d.num_components(),
                    "real": d.num_real(),
                    "virtual": d.num_virtual(),
                }),
                text,
            )
        }
        Command::Canon(c) => {
            let s = canonical_form(&c.input.diagram()?);
            out(json!({ "canonical": s }), s)
        }
        Command::Genus(c) => {
            let g = c.input.diagram()?.genus();
            out(json!({ "genus": g }), g.to_string())
        }
        Command::Realize(c) => code_output(&realize(&c.input.diagram()?)),
        Command::Invariants(c) => {
            let rep = report(&c.input.diagram()?);
            let mut text = format!("writhe {}\n", rep.writhe);
            match &rep.jn {
                Some(t) => {
                    let entries: Vec<String> = t.iter().map(|(n, v)| format!("J_{n} = {v}")).collect();
                    text += &format!("n-writhes: {}\n", if entries.is_empty() { "none".into() } else { entries.join(", ") });
                    text += &format!("J_0 = {}\n", t.j0);
                }
                None => text += "n-writhes: link\n",
            }
            text += &format!("lk {:?}\nlambda {:?}\n", rep.lk, rep.lambda);
            out(serde_json::to_value(&rep).unwrap(), text)
        }
        Command::Multiplex { common, r, counts, provenance } => {
            let d = common.input.diagram()?;
            if r < 2 {
                return Err(Error::BadR(r));
            }
            let (l, prov) = multiplex(&d, r as usize)?;
            if prov.source_genus > 0 {
                eprintln!("warning: source diagram has genus {}; the identities assume 0", prov.source_genus);
            }
            if counts {
                out(
                    json!({ "real": l.num_real(), "virtual": l.num_virtual() }),
                    format!("real {}, virtual {}", l.num_real(), l.num_virtual()),
                )
            } else if provenance {
                out(json!({ "code": l.to_string(), "provenance": prov }), format!("{l}\n{}", serde_json::to_string_pretty(&prov).unwrap()))
            } else {
                code_output(&l)
            }
        }
        Command::Cover { common, r } => {
            if r < 1 {
                return Err(Error::BadR(r));
            }
            code_output(&covering(&common.input.diagram()?, r as usize)?)
        }
        Command::Component { common, i } => code_output(&extract_component(&common.input.diagram()?, i)?),
        Command::Colorings { common, mode, n, enumerate } => {
            let d = common.input.diagram()?;
            let sys = match mode {
                Mode::Fox => build_system(&d, ColoringMode::Fox, None)?,
                Mode::Virtual => build_system(&d, ColoringMode::VirtualFox, None)?,
                Mode::Constrained => {
                    let (l2, prov) = multiplex(&d, 2)?;
                    build_system(&l2, ColoringMode::FoxConstrained, Some(&prov))?
                }
            };
            let summary = summarize(&sys, &[n])?;
            let count = summary.count_mod_n[&n.to_string()].clone();
            let mut json = serde_json::to_value(&summary).unwrap();
            let mut text = count.to_string();
            if enumerate {
                let all = enumerate_colorings(&sys, n, ENUMERATION_LIMIT)?;
                for c in &all {
                    text += &format!("\n{:?}", c.values);
                }
                json["colorings"] = json!(all.iter().map(|c| &c.values).collect::<Vec<_>>());
            }
            out(json, text)
        }
        Command::Moves { common, find: _, apply, walk, seed, replay: trace, kinds, size_cap: cap } => {
            let d = common.input.diagram()?;
            if let Some(site) = apply {
                let site: MoveSite = serde_json::from_str(&site).map_err(json_err)?;
                code_output(&apply_move(&d, &site)?)
            } else if let Some(steps) = walk {
                let kinds = parse_kinds(&kinds, MoveKind::generalized())?;
                let (end, trace) = random_walk(&d, steps, seed.unwrap_or(0), &kinds, cap.unwrap_or_else(size_cap));
                let text = format!("{end}\n{}", serde_json::to_string(&trace).unwrap());
                out(json!({ "code": end.to_string(), "trace": trace }), text)
            } else if let Some(trace) = trace {
                let trace: Vec<MoveSite> = serde_json::from_str(&trace).map_err(json_err)?;
                code_output(&replay(&d, &trace)?)
            } else {
                let sites = find_moves(&d, &parse_kinds(&kinds, MoveKind::all())?);
                let text: Vec<String> =
                    sites.iter().map(|s| format!("{} {} {:?}", s.kind, s.variant, s.locus)).collect();
                out(serde_json::to_value(&sites).unwrap(), text.join("\n"))
            }
        }
        Command::Verify { thm, names, r_max, n_max, .. } => {
            let identities: BTreeSet<Identity> = if thm == "all" {
                Identity::ALL.into_iter().collect()
            } else {
                BTreeSet::from([thm.parse()?])
            };
            if !(2..=5).contains(&r_max) {
                return Err(Error::BadR(r_max as i64));
            }
            if !(1..=9).contains(&n_max) {
                return Err(Error::BadModulus(n_max));
            }
            let cfg = VerifyConfig { identities, r_range: (2..=r_max).collect(), n_range: (2..=n_max).collect() };
            let names: Vec<&str> =
                if names.is_empty() { catalog::knot_names() } else { names.iter().map(String::as_str).collect() };
            let rep = verify_theorems(&names, &cfg)?;
            let mut text = String::new();
            for c in &rep.checks {
                let n = c.n.map(|n| format!(" n={n}")).unwrap_or_default();
                let status = if c.passed { "pass" } else { "FAIL" };
                text += &format!("{status} {} {} r={}{n} {}\n", c.identity, c.fixture, c.r, c.detail);
            }
            text += &format!("{} passed, {} failed", rep.passed, rep.failed);
            let ok = rep.ok();
            return Ok((out(serde_json::to_value(&rep).unwrap(), text), ok));
        }
        Command::Catalog { name, .. } => match name {
            Some(name) => {
                let e = catalog::entry(&name)?;
                out(serde_json::to_value(e).unwrap(), format!("{}  {}\n  {}", e.name, e.code, e.notes))
            }
            None => {
                let text: Vec<String> = CATALOG.iter().map(|e| format!("{:<9} {}", e.name, e.code)).collect();
                out(serde_json::to_value(CATALOG).unwrap(), text.join("\n"))
            }
        },
    };
    Ok((o, true))
}

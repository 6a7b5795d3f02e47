//! Command-line front end for `leavitt-core`.
//!
//! Every subcommand takes a quiver file. Output is either human-readable
//! text or, with `--format machine`, one `key<TAB>value` pair per line.
//! Exit codes: 0 success, 1 a verification or comparison failed, 2 usage,
//! parse or precondition errors.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use leavitt_core::{
    center, hh1, outer_derivation_witness, parse_expr, parse_quiver, print_element, print_quiver, print_tensor,
    print_word, verify_exactness_finite, verify_exactness_truncated, verify_identities, verify_path_algebra_exactness,
    Algebra, Bound, Components, Derivation, Element, Field, LeavittAlgebra, Letter, Mutation, Quiver, VerifyConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "leavitt", version, about = "Leavitt path algebras of finite quivers")]
struct Cli {
    /// Coefficient field: `q` for the rationals or `gf:<p>` for a prime field.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Field,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: leavitt_core::Error| e.to_string())
}

#[derive(Debug, Args)]
struct QuiverArg {
    /// Quiver file.
    file: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a quiver file and print it canonically.
    Check(QuiverArg),
    /// Print the normal form of an expression.
    Normalize {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide whether two expressions are equal in the algebra (exit 1 if not).
    Equal {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(short = 'a', allow_hyphen_values = true)]
        a: String,
        #[arg(short = 'b', allow_hyphen_values = true)]
        b: String,
    },
    /// List the normal monomials up to a length.
    Basis {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Longest monomial listed.
        #[arg(long)]
        max_len: usize,
    },
    /// Check the seven resolution identities on generators and random inputs.
    Verify {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random inputs per identity, after the generators.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Length bound of the monomials random inputs are built from.
        #[arg(long, default_value_t = 3)]
        sample_len: usize,
        /// Deliberately break one map to see a check fail.
        #[arg(long, value_parser = parse_mutation)]
        mutate: Option<Mutation>,
    },
    /// Check exactness of the resolution, exactly or on a truncation.
    Exactness {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Exact check over the whole algebra; needs an acyclic quiver.
        #[arg(long, conflicts_with_all = ["max_len", "slack", "path_algebra"])]
        full: bool,
        /// Length bound on pairs in the kernel of m [default: 4].
        #[arg(long)]
        max_len: Option<usize>,
        /// Extra length allowed for preimages in P [default: 2].
        #[arg(long)]
        slack: Option<usize>,
        /// Check the resolution of the path algebra instead.
        #[arg(long, conflicts_with_all = ["max_len", "slack"])]
        path_algebra: bool,
    },
    /// Compute the center, on a truncation or in full.
    Center {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Only elements supported on monomials of at most this length.
        #[arg(long, conflicts_with = "full")]
        max_len: Option<usize>,
        /// The whole center; needs an acyclic quiver.
        #[arg(long)]
        full: bool,
    },
    /// First Hochschild cohomology of a finite-dimensional Leavitt algebra.
    Hh1(QuiverArg),
    /// Build the derivation with the given components and evaluate it.
    Derivation {
        #[command(flatten)]
        quiver: QuiverArg,
        /// `<vertex>=<expr>`, the value at `e_v ⊗ e_v`; repeatable.
        #[arg(long = "component", allow_hyphen_values = true)]
        components: Vec<String>,
        /// Expression to evaluate the derivation on; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        eval: Vec<String>,
    },
}

fn parse_mutation(s: &str) -> Result<Mutation, String> {
    s.parse()
}

const DEFAULT_MAX_LEN: usize = 4;
const DEFAULT_SLACK: usize = 2;

/// Collects output in either format.
struct Report {
    format: Format,
    lines: Vec<String>,
}

impl Report {
    fn new(format: Format) -> Self {
        Report {
            format,
            lines: Vec::new(),
        }
    }

    /// A `key<TAB>value` line, machine format only.
    fn kv(&mut self, key: &str, value: impl Display) {
        if self.format == Format::Machine {
            self.lines.push(format!("{key}\t{value}"));
        }
    }

    /// A line of text, text format only.
    fn text(&mut self, line: impl Into<String>) {
        if self.format == Format::Text {
            self.lines.push(line.into());
        }
    }

    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        for l in &self.lines {
            writeln!(out, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<leavitt_core::Error> for Failure {
    fn from(e: leavitt_core::Error) -> Self {
        Failure::usage(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                // first line only, keeping diagnostics to one line
                let first = rendered.lines().next().unwrap_or("invalid arguments");
                let _ = writeln!(err, "{first}");
            }
            return code;
        }
    };
    let mut report = Report::new(cli.format);
    let code = match dispatch(&cli, &mut report) {
        Ok(code) => code,
        Err(f) => {
            let _ = report.write(out);
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    if report.write(out).is_err() {
        return EXIT_USAGE;
    }
    code
}

fn load(path: &Path, field: Field) -> Result<LeavittAlgebra, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let q = parse_quiver(&src).map_err(|e| match e {
        // parse errors already carry `line:column`
        leavitt_core::Error::Parse(_) => Failure::usage(format!("{}:{e}", path.display())),
        _ => Failure::usage(format!("{}: {e}", path.display())),
    })?;
    Ok(LeavittAlgebra::new(q, field))
}

fn expr(alg: &LeavittAlgebra, src: &str) -> Result<Element, Failure> {
    parse_expr(src, alg.quiver(), alg.field()).map_err(|e| Failure::usage(format!("in `{src}`: {e}")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn names(q: &Quiver, vs: &[leavitt_core::VertexId]) -> String {
    vs.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>().join(" ")
}

fn dispatch(cli: &Cli, r: &mut Report) -> Result<i32, Failure> {
    let field = cli.field;
    match &cli.command {
        Command::Check(QuiverArg { file }) => {
            let alg = load(file, field)?;
            let q = alg.quiver();
            r.kv("vertices", q.vertex_count());
            r.kv("arrows", q.arrow_count());
            r.kv("regular", names(q, &q.regular_vertices()));
            r.kv("sinks", names(q, &q.sinks()));
            for v in q.regular_vertices() {
                let a = q.special(v).expect("regular vertices have a special arrow");
                r.kv("special", format!("{} {}", q.vertex_name(v), q.arrow(a).name));
            }
            r.kv("acyclic", yes(q.is_acyclic()));
            r.text(print_quiver(q).trim_end());
            r.text(format!(
                "# ok: {} vertices, {} arrows, {} regular, {} sinks, {}",
                q.vertex_count(),
                q.arrow_count(),
                q.regular_vertices().len(),
                q.sinks().len(),
                if q.is_acyclic() { "acyclic" } else { "has cycles" }
            ));
            Ok(EXIT_OK)
        }
        Command::Normalize { quiver, expr: src } => {
            let alg = load(&quiver.file, field)?;
            let nf = alg.normal_form(&expr(&alg, src)?)?;
            let s = print_element(alg.quiver(), &nf);
            r.kv("normal_form", &s);
            r.kv("terms", nf.len());
            r.text(s);
            Ok(EXIT_OK)
        }
        Command::Equal { quiver, a, b } => {
            let alg = load(&quiver.file, field)?;
            let (x, y) = (expr(&alg, a)?, expr(&alg, b)?);
            let same = alg.equal(&x, &y)?;
            let diff = alg.normal_form(&(&x - &y))?;
            r.kv("equal", yes(same));
            r.kv("difference", print_element(alg.quiver(), &diff));
            if same {
                r.text("equal");
                Ok(EXIT_OK)
            } else {
                r.text(format!("not equal: difference {}", print_element(alg.quiver(), &diff)));
                Ok(EXIT_FAILED)
            }
        }
        Command::Basis { quiver, max_len } => {
            let alg = load(&quiver.file, field)?;
            let basis = alg.basis_up_to(*max_len);
            r.kv("max_len", max_len);
            r.kv("count", basis.len());
            for w in &basis {
                let s = print_word(alg.quiver(), w);
                r.kv("monomial", &s);
                r.text(s);
            }
            r.text(format!("# {} monomials of length <= {max_len}", basis.len()));
            Ok(EXIT_OK)
        }
        Command::Verify {
            quiver,
            seed,
            samples,
            sample_len,
            mutate,
        } => {
            let alg = load(&quiver.file, field)?;
            let config = VerifyConfig {
                seed: *seed,
                samples: *samples,
                max_len: *sample_len,
                mutation: *mutate,
                ..VerifyConfig::default()
            };
            let reports = verify_identities(&alg, &config)?;
            r.kv("field", field);
            r.kv("seed", seed);
            r.kv("samples", samples);
            if let Some(m) = mutate {
                r.kv("mutation", m);
                r.text(format!("# mutation: {m}"));
            }
            for rep in &reports {
                let key = rep.identity.key();
                let status = if rep.holds() { "ok" } else { "FAIL" };
                r.kv(&format!("{key}.status"), if rep.holds() { "ok" } else { "fail" });
                r.kv(&format!("{key}.cases"), rep.cases);
                r.text(format!(
                    "{status:<4}  {:<20} {:<30} {} cases",
                    key,
                    rep.identity.statement(),
                    rep.cases
                ));
                if let Some(w) = &rep.witness {
                    r.kv(&format!("{key}.witness"), w);
                    r.text(format!("      witness: {w}"));
                }
            }
            let failed = reports.iter().filter(|x| !x.holds()).count();
            r.kv("result", if failed == 0 { "verified" } else { "failed" });
            if failed == 0 {
                r.text(format!("all {} identities hold", reports.len()));
                Ok(EXIT_OK)
            } else {
                r.text(format!("{failed} of {} identities fail", reports.len()));
                Ok(EXIT_FAILED)
            }
        }
        Command::Exactness {
            quiver,
            full,
            max_len,
            slack,
            path_algebra,
        } => {
            let alg = load(&quiver.file, field)?;
            if *path_algebra {
                let e = verify_path_algebra_exactness(alg.quiver(), field)?;
                r.kv("mode", "path-algebra");
                r.kv("dim_triples", e.dim_triples);
                r.kv("dim_pairs", e.dim_pairs);
                r.kv("dim_algebra", e.dim_algebra);
                r.kv("rank_delta", e.rank_delta);
                r.kv("rank_mult", e.rank_mult);
                r.kv("euler", e.euler());
                r.kv("result", if e.is_exact() { "exact" } else { "not-exact" });
                r.text(format!(
                    "path algebra dims {}/{}/{} (kQ⊗kQ1⊗kQ, kQ⊗kQ, kQ)",
                    e.dim_triples, e.dim_pairs, e.dim_algebra
                ));
                r.text(format!("rank δ = {}, rank m = {}", e.rank_delta, e.rank_mult));
                r.text(if e.is_exact() { "exact" } else { "not exact" });
                return Ok(if e.is_exact() { EXIT_OK } else { EXIT_FAILED });
            }
            if *full {
                let e = verify_exactness_finite(&alg)?;
                r.kv("mode", "full");
                r.kv("dim_p", e.dim_p);
                r.kv("dim_pairs", e.dim_pairs);
                r.kv("dim_algebra", e.dim_algebra);
                r.kv("rank_partial", e.rank_partial);
                r.kv("rank_mult", e.rank_mult);
                r.kv("kernel_mult", e.kernel_mult());
                r.kv("partial_injective", yes(e.partial_injective()));
                r.kv("middle_exact", yes(e.middle_exact()));
                r.kv("mult_surjective", yes(e.mult_surjective()));
                r.kv("euler", e.euler());
                r.kv("result", if e.is_exact() { "exact" } else { "not-exact" });
                r.text(format!(
                    "dims {}/{}/{} (P, L⊗L, L)",
                    e.dim_p, e.dim_pairs, e.dim_algebra
                ));
                r.text(format!(
                    "rank ∂ = {}, rank m = {}, dim ker m = {}",
                    e.rank_partial,
                    e.rank_mult,
                    e.kernel_mult()
                ));
                r.text(format!("Euler characteristic {}", e.euler()));
                r.text(if e.is_exact() { "exact" } else { "not exact" });
                return Ok(if e.is_exact() { EXIT_OK } else { EXIT_FAILED });
            }
            let n = max_len.unwrap_or(DEFAULT_MAX_LEN);
            let s = slack.unwrap_or(DEFAULT_SLACK);
            let e = verify_exactness_truncated(&alg, n, s)?;
            r.kv("mode", "truncated");
            r.kv("max_len", n);
            r.kv("slack", s);
            r.kv("dim_pairs", e.dim_pairs);
            r.kv("dim_p", e.dim_p);
            r.kv("kernel_dim", e.kernel_dim);
            r.kv("solved", e.solved);
            r.kv("unsolved", e.unsolved);
            r.kv("result", if e.all_solved() { "all-solved" } else { "inconclusive" });
            r.text(format!(
                "truncation: pairs of length <= {n} ({}), P of length <= {} ({})",
                e.dim_pairs,
                n + s,
                e.dim_p
            ));
            r.text(format!(
                "ker m: {} vectors, {} with a ∂-preimage, {} unsolved",
                e.kernel_dim, e.solved, e.unsolved
            ));
            r.text(if e.all_solved() {
                "evidence: every kernel vector lifts"
            } else {
                "inconclusive: some kernel vectors did not lift within the slack"
            });
            Ok(EXIT_OK)
        }
        Command::Center { quiver, max_len, full } => {
            let alg = load(&quiver.file, field)?;
            let bound = match (full, max_len) {
                (true, _) => Bound::Full,
                (false, Some(n)) => Bound::MaxLen(*n),
                (false, None) => return Err(Failure::usage("center needs --max-len N or --full")),
            };
            let c = center(&alg, bound)?;
            let bound_text = match bound {
                Bound::Full => "full".to_owned(),
                Bound::MaxLen(n) => n.to_string(),
            };
            r.kv("bound", &bound_text);
            r.kv("dim", c.dim());
            r.text(format!("center (bound {bound_text}): dimension {}", c.dim()));
            for z in &c.basis {
                let s = print_element(alg.quiver(), z);
                r.kv("basis", &s);
                r.text(format!("  {s}"));
            }
            Ok(EXIT_OK)
        }
        Command::Hh1(QuiverArg { file }) => {
            let alg = load(file, field)?;
            let h = hh1(&alg)?;
            r.kv("source_dim", h.source_dim);
            r.kv("target_dim", h.target_dim);
            r.kv("rank", h.rank);
            r.kv("hh0", h.hh0());
            r.kv("hh1", h.hh1());
            r.text(format!("Φ: {} -> {}, rank {}", h.source_dim, h.target_dim, h.rank));
            r.text(format!("dim HH0 = {}, dim HH1 = {}", h.hh0(), h.hh1()));
            for c in &h.outer_basis {
                let s = describe_components(&alg, c)?;
                r.kv("outer", &s);
                r.text(format!("  outer: {s}"));
            }
            Ok(EXIT_OK)
        }
        Command::Derivation {
            quiver,
            components,
            eval,
        } => {
            let alg = load(&quiver.file, field)?;
            let q = alg.quiver();
            let mut values = Vec::new();
            for c in components {
                let (v, src) = c
                    .split_once('=')
                    .ok_or_else(|| Failure::usage(format!("component `{c}` is not of the form <vertex>=<expr>")))?;
                let vid = q
                    .vertex_id(v.trim())
                    .ok_or_else(|| Failure::usage(format!("unknown vertex `{}`", v.trim())))?;
                values.push((vid, alg.normal_form(&expr(&alg, src)?)?));
            }
            let comps = Components::in_algebra(q, values)?;
            let d = if q.is_acyclic() {
                let w = outer_derivation_witness(&alg, &comps)?;
                r.kv("inner", yes(w.is_inner()));
                match &w.inner {
                    Some(z) => {
                        let s = print_element(q, z);
                        r.kv("implementing", &s);
                        r.text(format!("inner: d(x) = x z - z x with z = {s}"));
                    }
                    None => r.text("outer: not an inner derivation"),
                }
                w.derivation
            } else {
                r.kv("inner", "unknown");
                r.text("inner: undecided (infinite-dimensional algebra)");
                leavitt_core::derivation_from_components(&alg, &comps)?
            };
            for l in q.double_quiver() {
                let s = print_tensor(q, &d.eval(&alg, &Element::letter(field, q, l))?);
                let name = letter_name(q, l);
                r.kv(&format!("d({name})"), &s);
                r.text(format!("d({name}) = {s}"));
            }
            for src in eval {
                let x = expr(&alg, src)?;
                let s = eval_text(&alg, &d, &x)?;
                r.kv("eval", &s);
                r.text(format!("d({src}) = {s}"));
            }
            Ok(EXIT_OK)
        }
    }
}

fn letter_name(q: &Quiver, l: Letter) -> String {
    let name = &q.arrow(l.arrow).name;
    if l.ghost {
        format!("{name}'")
    } else {
        name.clone()
    }
}

fn eval_text(alg: &LeavittAlgebra, d: &Derivation, x: &Element) -> Result<String, Failure> {
    Ok(print_tensor(alg.quiver(), &d.eval(alg, x)?))
}

fn describe_components(alg: &LeavittAlgebra, c: &Components) -> Result<String, Failure> {
    let q = alg.quiver();
    let mut parts = Vec::new();
    for (v, t) in c.iter() {
        parts.push(format!("{}={}", q.vertex_name(*v), print_element(q, &t.to_element()?)));
    }
    Ok(parts.join(" "))
}

//! Command-line interface: every library operation behind a subcommand,
//! JSON on stdout (or to --out), DOT for diagram export, deterministic
//! seeds for randomized sweeps, and a `verify-all` acceptance runner.
//!
//! Exit codes: 0 success/pass, 1 check failure, 2 usage error.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use rmanyon_core::anyon::{
    apply_braid_word, dimension_function_to_braid, hexagon_check, one_label_pentagon_residual,
    pentagon_check, pentagon_search, BraidFactor, BraidWord, FRData,
};
use rmanyon_core::bratteli::{
    cone_compare, from_continued_fraction, k0_quasi_type, k0_stationary, BratteliDiagram,
    BratteliJson, DigitConvention, DimensionFunction, FunctionalNormalization,
};
use rmanyon_core::fusion::{
    k0_class_of_power, rm_anyon_system, verify_axioms, verlinde_check, FusionSystem, RMAnyonJson,
};
use rmanyon_core::intmat::IntMatrix;
use rmanyon_core::linalg::{CMatrix, OperatorJson};
use rmanyon_core::qtorus::{
    convergent_gates, dilog_pentagon_residual, qdilog_root_of_unity, weyl_pentagon_check,
    RootOfUnity,
};
use rmanyon_core::quadratic::{
    cf_expand, eigen_quad, fixing_matrix_options, moebius_act, reduced_factorization,
    QuadraticIrrational, UnimodularMatrix,
};
use rmanyon_core::{acceptance, tol};

#[derive(Parser)]
#[command(
    name = "rmanyon",
    about = "Fusion rules, Bratteli diagrams, K-theory and braid data for real-multiplication anyon systems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Args, Clone)]
struct ThetaArg {
    /// Quadratic irrationality as JSON {"P":..,"Q":..,"D":..}.
    #[arg(long)]
    theta: String,
}

impl ThetaArg {
    fn parse(&self) -> Result<QuadraticIrrational, String> {
        serde_json::from_str(&self.theta).map_err(|e| format!("bad --theta: {e}"))
    }
}

#[derive(Args, Clone)]
struct MatrixArg {
    /// 2×2 integer matrix as JSON `[[a,b],[c,d]]`.
    #[arg(long)]
    matrix: String,
}

impl MatrixArg {
    fn parse(&self) -> Result<UnimodularMatrix, String> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(&self.matrix).map_err(|e| format!("bad --matrix: {e}"))?;
        if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
            return Err("--matrix must be 2×2".into());
        }
        UnimodularMatrix::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
            .map_err(|e| format!("bad --matrix: {e}"))
    }

    fn parse_int_matrix(&self) -> Result<IntMatrix, String> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(&self.matrix).map_err(|e| format!("bad --matrix: {e}"))?;
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Ok(IntMatrix::from_rows(big))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Continued-fraction expansion of a quadratic irrationality.
    Cf(ThetaArg),
    /// Fixing matrices of θ for 1..m concatenated periods.
    Fix {
        #[command(flatten)]
        theta: ThetaArg,
        /// Number of period powers to report.
        #[arg(long, default_value_t = 3)]
        periods: u32,
    },
    /// Möbius action (aθ+b)/(cθ+d).
    Moebius {
        #[command(flatten)]
        theta: ThetaArg,
        #[command(flatten)]
        matrix: MatrixArg,
    },
    /// Reduced-semigroup factorization of a matrix.
    Reduced(MatrixArg),
    /// Exact eigenvalues of a unimodular matrix.
    Eigen(MatrixArg),
    /// Bratteli diagram of the continued fraction of θ.
    Bratteli {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        /// Use the flipped digit matrices `[[0,1],[1,c]]`.
        #[arg(long)]
        flipped: bool,
    },
    /// Telescope a diagram (JSON from `bratteli`, inline or @file) at cuts.
    Telescope {
        #[arg(long)]
        diagram: String,
        /// Comma-separated retained levels, starting at 0.
        #[arg(long)]
        cuts: String,
    },
    /// Ordered K₀ of a stationary 2×2 incidence, with optional membership
    /// queries ("n,m;n,m;…").
    K0 {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, allow_hyphen_values = true)]
        vectors: Option<String>,
    },
    /// Quasi-isomorphism type of the direct limit along a matrix.
    Quasitype(MatrixArg),
    /// Fusion-axiom report and Verlinde residual for the trace-t system.
    FusionCheck {
        #[arg(long, default_value_t = 1)]
        trace: u64,
    },
    /// The real-multiplication anyon system of θ.
    RmAnyon(ThetaArg),
    /// The S̃-matrix of the system of θ, with residuals.
    Smatrix(ThetaArg),
    /// K₀ class of E_{g^k}(θ).
    K0class {
        #[command(flatten)]
        theta: ThetaArg,
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        k: i64,
    },
    /// Pentagon residual (--golden for the Fibonacci data; --search for the
    /// exploratory solver at a given trace).
    Pentagon {
        #[arg(long)]
        golden: bool,
        #[arg(long)]
        search: Option<u64>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = tol::PENTAGON)]
        tol: f64,
    },
    /// Hexagon residual for the golden F/R data.
    Hexagon {
        #[arg(long, default_value_t = tol::PENTAGON)]
        tol: f64,
    },
    /// Evaluate a braid word on the n-anyon space.
    Braid {
        #[arg(long)]
        n: usize,
        /// Word as JSON [{"gen":1,"exp":1},…].
        #[arg(long, default_value = "[]")]
        word: String,
    },
    /// Dimension function from a seed "top,bottom", with its braid word.
    Dimfun {
        #[arg(long, allow_hyphen_values = true)]
        seed_values: String,
        #[arg(long, default_value_t = 1)]
        column: usize,
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
    /// Clock/shift gates from the n-th convergent of θ.
    Gates {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long)]
        n: usize,
        /// Include the U and V matrices in the output.
        #[arg(long)]
        full: bool,
    },
    /// Truncated Weyl-algebra pentagon residual.
    WeylPentagon {
        /// Parameter q as "re" or "re,im" with |q| < 1.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 10)]
        degree: usize,
        #[arg(long, default_value_t = tol::WEYL_PENTAGON)]
        tol: f64,
    },
    /// Quantum dilogarithm Φ_ζ(z) at a root of unity ζ = "p/N".
    Qdilog {
        #[arg(long)]
        zeta: String,
        /// z as "re" or "re,im".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Root-of-unity pentagon diagnostic (reported, not asserted).
    DilogPentagon {
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        p: i64,
        #[arg(long)]
        q: usize,
        /// Phase of u in radians (|u| = 1).
        #[arg(long, default_value_t = std::f64::consts::PI / 5.0, allow_negative_numbers = true)]
        u_phase: f64,
        /// Phase of v in radians (|v| = 1).
        #[arg(long, default_value_t = std::f64::consts::PI / 7.0, allow_negative_numbers = true)]
        v_phase: f64,
        /// Evaluate this many seeded random (u, v) pairs instead of the
        /// single pair above.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Compare the incidence-g and incidence-N₁ cones.
    ConeCompare {
        #[command(flatten)]
        theta: ThetaArg,
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 4)]
        grid: i64,
    },
    /// DOT export of the continued-fraction diagram of θ.
    ExportDot {
        #[command(flatten)]
        theta: ThetaArg,
        #[arg(long, default_value_t = 8)]
        levels: usize,
    },
    /// Run the full acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let emit = if let Some(path) = &cli.out {
                std::fs::write(path, outcome.text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {}", path, e))
            } else {
                std::io::stdout()
                    .write_all(outcome.text.as_bytes())
                    .and_then(|_| std::io::stdout().write_all(b"\n"))
                    .map_err(|e| e.to_string())
            };
            match emit {
                Ok(()) if outcome.pass => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    text: String,
    pass: bool,
}

fn ok(value: impl Serialize) -> Result<Outcome, String> {
    Ok(Outcome {
        text: to_json(&value),
        pass: true,
    })
}

fn gated(value: impl Serialize, pass: bool) -> Result<Outcome, String> {
    Ok(Outcome {
        text: to_json(&value),
        pass,
    })
}

/// Serialize to JSON with shortest-round-trip floats: the textual form
/// parses back to the identical double, and identical inputs yield
/// byte-identical output.
fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(
            re.trim().parse::<f64>().map_err(|e| e.to_string())?,
            0.0,
        )),
        [re, im] => Ok(Complex64::new(
            re.trim().parse::<f64>().map_err(|e| e.to_string())?,
            im.trim().parse::<f64>().map_err(|e| e.to_string())?,
        )),
        _ => Err(format!("cannot parse complex number from {text:?}")),
    }
}

fn load_inline_or_file(text: &str) -> Result<String, String> {
    if let Some(path) = text.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {}", path, e))
    } else {
        Ok(text.to_string())
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Cf(arg) => {
            let theta = arg.parse()?;
            ok(cf_expand(&theta))
        }
        Command::Fix { theta, periods } => {
            let theta = theta.parse()?;
            let options = fixing_matrix_options(&theta, (*periods).max(1));
            let rows: Vec<_> = options
                .iter()
                .map(|f| {
                    json!({
                        "matrix": f.matrix,
                        "periods_used": f.periods_used,
                        "period_length": f.period_length,
                        "det": f.det.to_string(),
                        "entries_nonnegative": f.entries_nonnegative,
                    })
                })
                .collect();
            ok(json!({"theta": theta, "options": rows}))
        }
        Command::Moebius { theta, matrix } => {
            let theta = theta.parse()?;
            let g = matrix.parse()?;
            ok(moebius_act(&g, &theta))
        }
        Command::Reduced(matrix) => {
            let g = matrix.parse()?;
            match reduced_factorization(&g) {
                Ok(f) => ok(json!({
                    "reduced": true,
                    "digits": f.digits.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "length": f.length,
                    "primitive_power": f.primitive_power,
                })),
                Err(_) => ok(json!({"reduced": false})),
            }
        }
        Command::Eigen(matrix) => {
            let g = matrix.parse()?;
            let (hi, lo) = eigen_quad(&g);
            ok(json!({
                "perron": {"value": hi.to_f64(), "display": hi.to_string()},
                "conjugate": {"value": lo.to_f64(), "display": lo.to_string()},
                "trace": g.trace().to_string(),
                "det": g.det().to_string(),
            }))
        }
        Command::Bratteli {
            theta,
            levels,
            flipped,
        } => {
            let theta = theta.parse()?;
            let convention = if *flipped {
                DigitConvention::DigitBottom
            } else {
                DigitConvention::DigitTop
            };
            let d = from_continued_fraction(&cf_expand(&theta), *levels, convention)
                .map_err(|e| e.to_string())?;
            ok(BratteliJson::from(&d))
        }
        Command::Telescope { diagram, cuts } => {
            let text = load_inline_or_file(diagram)?;
            let parsed: BratteliJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let d = BratteliDiagram::try_from(&parsed).map_err(|e| e.to_string())?;
            let cuts: Vec<usize> = cuts
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let t = d.telescope(&cuts).map_err(|e| e.to_string())?;
            ok(BratteliJson::from(&t))
        }
        Command::K0 { matrix, vectors } => {
            let phi = matrix.parse_int_matrix()?;
            let k0 = k0_stationary(&phi, FunctionalNormalization::SecondOne)
                .map_err(|e| e.to_string())?;
            let mut tested = Vec::new();
            if let Some(spec) = vectors {
                for part in spec.split(';') {
                    let coords: Vec<i64> = part
                        .split(',')
                        .map(|s| s.trim().parse::<i64>().map_err(|e| e.to_string()))
                        .collect::<Result<_, _>>()?;
                    if coords.len() != 2 {
                        return Err("each vector needs two coordinates".into());
                    }
                    let h = [BigInt::from(coords[0]), BigInt::from(coords[1])];
                    tested.push(json!({
                        "vector": coords,
                        "positive": k0.is_positive(&h),
                    }));
                }
            }
            ok(json!({
                "rank": k0.rank,
                "functional": [k0.functional.0.to_f64(), k0.functional.1.to_f64()],
                "functional_display": [
                    k0.functional.0.to_string(),
                    k0.functional.1.to_string()
                ],
                "order_unit": k0.order_unit.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "memberships": tested,
            }))
        }
        Command::Quasitype(matrix) => {
            let phi = matrix.parse_int_matrix()?;
            ok(k0_quasi_type(&phi).map_err(|e| e.to_string())?)
        }
        Command::FusionCheck { trace } => {
            let sys = FusionSystem::two_label(*trace);
            let report = verify_axioms(&sys);
            let verlinde = verlinde_check(&sys).map_err(|e| e.to_string())?;
            let pass = report.all_passed && verlinde <= tol::VERLINDE;
            gated(
                json!({
                    "system": sys,
                    "axioms": report,
                    "verlinde_residual": verlinde,
                    "pass": pass,
                }),
                pass,
            )
        }
        Command::RmAnyon(arg) => {
            let theta = arg.parse()?;
            let sys = rm_anyon_system(&theta).map_err(|e| e.to_string())?;
            ok(RMAnyonJson::from(&sys))
        }
        Command::Smatrix(arg) => {
            let theta = arg.parse()?;
            let sys = rm_anyon_system(&theta).map_err(|e| e.to_string())?;
            ok(json!({
                "s_matrix": OperatorJson::from(&sys.s_matrix),
                "lambda": sys.lambda.to_f64(),
                "symmetry_residual": sys.s_symmetry_residual(),
                "involution_residual": sys.s_involution_residual(),
                "eigen_residual": sys.s_eigen_residual(),
            }))
        }
        Command::K0class { theta, matrix, k } => {
            let theta = theta.parse()?;
            let g = matrix.parse()?;
            if moebius_act(&g, &theta) != theta {
                return Err("matrix does not fix theta".into());
            }
            let class = k0_class_of_power(&g, &theta, *k);
            ok(json!({
                "k": k,
                "n": class.n.to_string(),
                "m": class.m.to_string(),
                "value": class.to_f64(),
            }))
        }
        Command::Pentagon {
            golden,
            search,
            seed,
            tol: tolerance,
        } => {
            if let Some(trace) = search {
                return ok(pentagon_search(*trace, *seed, 24, 2000));
            }
            if !golden {
                return Err("choose --golden or --search <trace>".into());
            }
            let residual = pentagon_check(&FRData::golden());
            let pass = residual <= *tolerance;
            gated(
                json!({
                    "residual": residual,
                    "one_label_residual": one_label_pentagon_residual(),
                    "pass": pass,
                }),
                pass,
            )
        }
        Command::Hexagon { tol: tolerance } => {
            let residual = hexagon_check(&FRData::golden());
            let pass = residual <= *tolerance;
            gated(json!({"residual": residual, "pass": pass}), pass)
        }
        Command::Braid { n, word } => {
            let factors: Vec<BraidFactor> =
                serde_json::from_str(word).map_err(|e| format!("bad --word: {e}"))?;
            let w = BraidWord { factors }.normalized();
            if *n == 0 {
                // No anyons: the state space is ℂ and every braid acts
                // trivially.
                return ok(json!({
                    "n": 0,
                    "dim": 1,
                    "operator": OperatorJson::from(&CMatrix::identity(1)),
                    "unitary_residual": 0.0,
                }));
            }
            let m = apply_braid_word(&w, *n, &FRData::golden());
            ok(json!({
                "n": n,
                "dim": m.rows(),
                "operator": OperatorJson::from(&m),
                "unitary_residual": m.unitary_residual(),
            }))
        }
        Command::Dimfun {
            seed_values,
            column,
            levels,
        } => {
            let coords: Vec<i64> = seed_values
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            if coords.len() != 2 {
                return Err("--seed-values needs \"top,bottom\"".into());
            }
            let cf = cf_expand(&QuadraticIrrational::golden());
            let diagram = from_continued_fraction(&cf, levels + 1, DigitConvention::DigitTop)
                .map_err(|e| e.to_string())?;
            let f = DimensionFunction::extend(
                &diagram,
                *column,
                (BigInt::from(coords[0]), BigInt::from(coords[1])),
                *levels,
            )
            .map_err(|e| e.to_string())?;
            let word = dimension_function_to_braid(&f, levels.saturating_sub(1))
                .map_err(|e| e.to_string())?;
            ok(json!({
                "root": f.root.as_ref().map(|r| r.to_string()),
                "columns": f
                    .columns
                    .iter()
                    .map(|(t, b)| vec![t.to_string(), b.to_string()])
                    .collect::<Vec<_>>(),
                "relations_hold": f.check_relations(),
                "braid_word": word.factors,
            }))
        }
        Command::Gates { theta, n, full } => {
            let theta = theta.parse()?;
            let gates = convergent_gates(&theta, *n).map_err(|e| e.to_string())?;
            let mut body = json!({
                "n": n,
                "p": gates.p.to_string(),
                "q": gates.q.to_string(),
                "commutation_residual": gates.pair.commutation_residual(),
            });
            if *full {
                body["U"] = serde_json::to_value(OperatorJson::from(&gates.pair.u)).unwrap();
                body["V"] = serde_json::to_value(OperatorJson::from(&gates.pair.v)).unwrap();
            }
            ok(body)
        }
        Command::WeylPentagon {
            q,
            degree,
            tol: tolerance,
        } => {
            let q = parse_complex(q)?;
            let residual = weyl_pentagon_check(q, *degree).map_err(|e| e.to_string())?;
            let pass = residual <= *tolerance;
            gated(
                json!({
                    "q": [q.re, q.im],
                    "degree": degree,
                    "residual": residual,
                    "pass": pass,
                }),
                pass,
            )
        }
        Command::Qdilog { zeta, z } => {
            let (num, den) = zeta
                .split_once('/')
                .ok_or_else(|| "zeta must look like p/N".to_string())?;
            let zeta = RootOfUnity::new(
                num.trim().parse::<i64>().map_err(|e| e.to_string())?,
                den.trim().parse::<u32>().map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let z = parse_complex(z)?;
            let (value, log) = qdilog_root_of_unity(&zeta, z).map_err(|e| e.to_string())?;
            ok(json!({
                "value": [value.re, value.im],
                "branch_log": log,
            }))
        }
        Command::DilogPentagon {
            p,
            q,
            u_phase,
            v_phase,
            sweep,
            seed,
        } => {
            // Diagnostic: completion is the pass condition, not the
            // residual value.
            if let Some(count) = sweep {
                let mut rng = rmanyon_core::util::SplitMix64::new(*seed);
                let mut reports = Vec::new();
                let mut all_completed = true;
                while reports.len() < *count {
                    let u = Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * rng.next_f64(),
                    );
                    let v = Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * rng.next_f64(),
                    );
                    match dilog_pentagon_residual(*p, *q, u, v) {
                        Ok(r) => {
                            all_completed &= r.completed;
                            reports.push(serde_json::to_value(r).unwrap());
                        }
                        // Degenerate draws (u^q = 1 and friends) are skipped,
                        // branch-cut hits are recorded.
                        Err(rmanyon_core::qtorus::QTorusError::BadParams(_)) => continue,
                        Err(e) => {
                            reports.push(json!({"error": e.to_string(), "completed": false}));
                            all_completed = false;
                        }
                    }
                }
                return gated(
                    json!({"seed": seed, "sweep": count, "reports": reports}),
                    all_completed,
                );
            }
            let u = Complex64::from_polar(1.0, *u_phase);
            let v = Complex64::from_polar(1.0, *v_phase);
            let report = dilog_pentagon_residual(*p, *q, u, v).map_err(|e| e.to_string())?;
            let pass = report.completed;
            gated(report, pass)
        }
        Command::ConeCompare {
            theta,
            matrix,
            bound,
            grid,
        } => {
            let theta = theta.parse()?;
            let g = matrix.parse()?;
            ok(cone_compare(&theta, &g, *bound, *grid).map_err(|e| e.to_string())?)
        }
        Command::ExportDot { theta, levels } => {
            let theta = theta.parse()?;
            let d =
                from_continued_fraction(&cf_expand(&theta), *levels, DigitConvention::DigitTop)
                    .map_err(|e| e.to_string())?;
            Ok(Outcome {
                text: d.to_dot(),
                pass: true,
            })
        }
        Command::VerifyAll { seed } => {
            let outcomes = acceptance::run_all(*seed);
            let pass = outcomes.iter().all(|o| o.passed);
            gated(
                json!({
                    "criteria": outcomes,
                    "passed": outcomes.iter().filter(|o| o.passed).count(),
                    "total": outcomes.len(),
                    "pass": pass,
                }),
                pass,
            )
        }
    }
}

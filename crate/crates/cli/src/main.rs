use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ringdef_core::arith::{fmt_rational, parse_rational, Place, Prime, Rational};
use ringdef_core::cert::{
    load_certificate, parse_primes, universal_to_text, AnyCertificate, SemilocalCertificate,
};
use ringdef_core::formula::{formula_to_string, universal_formula, universal_ring_formula};
use ringdef_core::harness::{
    run_suite, selftest, verify_semilocal, verify_universal, CorpusSpec, RunReport, SuiteConfig,
};
use ringdef_core::local::{hilbert_symbol, in_poonen_set, poonen_decompose, QuatAlg};
use ringdef_core::ring::{synthesize_semilocal, SemilocalSpec};
use ringdef_core::universal::assemble_certificate;
use ringdef_core::{formula::quantifier_ledger, Error};

#[derive(Parser)]
#[command(name = "ringdef", version, about = "Definitions of semilocal rings and S-integer rings over the rationals")]
struct Cli {
    /// corpus seed
    #[arg(long, global = true, env = "RINGDEF_SEED", default_value_t = 1)]
    seed: u64,
    /// corpus height bound
    #[arg(long, global = true, default_value_t = 1000)]
    height: u64,
    /// corpus size, boundary values not included
    #[arg(long, global = true)]
    count: Option<usize>,
    /// witness or decomposition height budget
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// write the main document here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tabular,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert symbol (s, t) at a prime or at `inf`
    Symbol {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(allow_hyphen_values = true)]
        t: String,
        place: String,
    },
    /// Ramification set of the quaternion algebra [a, b)
    Delta {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Synthesize a semilocal definition and print its certificate
    DefineSemilocal { primes: String },
    /// Re-check a semilocal certificate against the valuation oracle
    VerifySemilocal { cert: PathBuf },
    /// Write x as a sum of two elements of the Poonen set of [a, b)
    Poonen {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Assemble and verify the universal certificate for the S-integers
    Universal { primes: String },
    /// Print the formula carried by a certificate
    EmitFormula {
        cert: PathBuf,
        /// for universal certificates: eliminate inverses (slow, large output)
        #[arg(long)]
        ring: bool,
    },
    /// Quantifier accounting for the universal definition
    Ledger { primes: String },
    /// Run every verification suite
    Selftest,
    /// Run one named verification suite
    Suite { name: String },
}

enum Failure {
    /// bad input, exit 2
    Usage(String),
    /// a check failed or a certificate was rejected, exit 1
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::NotPrime(_) | Error::UnknownSuite(_) | Error::ZeroInput => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::Usage(format!("not a rational number: {s}")))
}

fn primes(s: &str) -> Result<std::collections::BTreeSet<Prime>, Failure> {
    let set = parse_primes(s).map_err(|_| Failure::Usage(format!("not a prime list: {s}")))?;
    if set.is_empty() {
        return Err(Failure::Usage("empty prime list".into()));
    }
    Ok(set)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

impl Cli {
    fn corpus(&self, default_count: usize) -> CorpusSpec {
        CorpusSpec {
            height_bound: self.height,
            count: self.count.unwrap_or(default_count),
            seed: self.seed,
            include_boundary: true,
        }
    }

    fn suite_config(&self) -> SuiteConfig {
        let mut cfg = SuiteConfig::quick(self.seed);
        cfg.corpus.height_bound = self.height;
        if let Some(c) = self.count {
            cfg.corpus.count = c;
        }
        if let Some(b) = self.budget {
            cfg.witness_height = b;
        }
        cfg
    }

    /// Writes `doc` to --out or stdout.
    fn emit(&self, doc: &str) -> Result<(), Failure> {
        match &self.out {
            Some(p) => std::fs::write(p, doc).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
            None => {
                print!("{doc}");
                Ok(())
            }
        }
    }

    fn emit_report(&self, r: &RunReport) -> Result<(), Failure> {
        let doc = match self.format {
            Format::Text => r.to_text(),
            Format::Tabular => r.to_csv(),
        };
        self.emit(&doc)?;
        if self.out.is_some() {
            println!("status = {}", if r.ok() { "pass" } else { "fail" });
        }
        if r.ok() {
            Ok(())
        } else {
            Err(Failure::Check(format!("{} failed", r.command)))
        }
    }

    fn run(&self) -> Result<(), Failure> {
        match &self.cmd {
            Cmd::Symbol { s, t, place } => {
                let place = match place.as_str() {
                    "inf" | "real" => Place::Real,
                    p => Place::prime(p.parse().map_err(|_| Failure::Usage(format!("bad place {p}")))?)?,
                };
                let v = hilbert_symbol(&rational(s)?, &rational(t)?, place)?;
                self.emit(&format!("{v}\n"))
            }
            Cmd::Delta { a, b } => {
                let q = QuatAlg::new(rational(a)?, rational(b)?)?;
                let doc = match self.format {
                    Format::Text => format!("{}\n", q.delta()),
                    Format::Tabular => {
                        let mut s = String::from("place\n");
                        for p in &q.delta().finite {
                            s.push_str(&format!("{p}\n"));
                        }
                        if q.delta().real_ramified {
                            s.push_str("inf\n");
                        }
                        s
                    }
                };
                self.emit(&doc)
            }
            Cmd::DefineSemilocal { primes: ps } => {
                let spec = SemilocalSpec::new(primes(ps)?)?;
                let cert = SemilocalCertificate::from_definition(synthesize_semilocal(&spec)?)?;
                self.emit(&cert.to_text())
            }
            Cmd::VerifySemilocal { cert } => {
                let AnyCertificate::Semilocal(c) = load_certificate(&read(cert)?)? else {
                    return Err(Failure::Usage("not a semilocal certificate".into()));
                };
                let budget = self.budget.unwrap_or(1000);
                let r = verify_semilocal(&c, &self.corpus(1000), budget, 50)?;
                self.emit_report(&r)
            }
            Cmd::Poonen { a, b, x } => {
                let q = QuatAlg::new(rational(a)?, rational(b)?)?;
                let x = rational(x)?;
                let (s, t) = poonen_decompose(&q, &x, self.budget.unwrap_or(10_000))?;
                debug_assert!(in_poonen_set(&q, &s)? && in_poonen_set(&q, &t)?);
                let doc = match self.format {
                    Format::Text => format!("{} = {} + {}\n", fmt_rational(&x), fmt_rational(&s), fmt_rational(&t)),
                    Format::Tabular => format!("x,s,t\n{},{},{}\n", fmt_rational(&x), fmt_rational(&s), fmt_rational(&t)),
                };
                self.emit(&doc)
            }
            Cmd::Universal { primes: ps } => {
                let cert = assemble_certificate(&primes(ps)?)?;
                if let Some(p) = &self.out {
                    std::fs::write(p, universal_to_text(&cert)?)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
                }
                let spec = self.corpus(1000);
                let r = verify_universal(&cert, &spec)?;
                match self.format {
                    Format::Text => print!("{}", r.to_text()),
                    Format::Tabular => {
                        let xs = ringdef_core::harness::generate_corpus(&spec);
                        print!("{}", cert.decisions_csv(&xs)?);
                    }
                }
                if r.ok() {
                    Ok(())
                } else {
                    Err(Failure::Check("universal certificate disagrees with the oracle".into()))
                }
            }
            Cmd::EmitFormula { cert, ring } => {
                let text = match load_certificate(&read(cert)?)? {
                    AnyCertificate::Semilocal(c) => formula_to_string(&c.formula.to_formula()),
                    AnyCertificate::Universal(c) => {
                        let complement = c.complement_formula()?;
                        if *ring {
                            formula_to_string(&universal_ring_formula(&complement)?)
                        } else {
                            formula_to_string(&universal_formula(&complement))
                        }
                    }
                };
                self.emit(&format!("{text}\n"))
            }
            Cmd::Ledger { primes: ps } => {
                let cert = assemble_certificate(&primes(ps)?)?;
                let l = quantifier_ledger();
                let doc = match self.format {
                    Format::Text => {
                        let mut s = format!(
                            "{{paper: {}, naive: {}, merge_constructed: {}}}\n",
                            l.paper_total, l.naive_total, l.merge_constructed
                        );
                        for line in l.lines() {
                            s.push_str(&line);
                            s.push('\n');
                        }
                        s.push_str(&format!("complement_formula = {}\n", cert.complement_quantifiers));
                        s.push_str(&format!("duality = {}\n", cert.duality_note()));
                        s
                    }
                    Format::Tabular => format!(
                        "block,quantifiers\nwitness_pair,{}\nphi_block,{}\npoonen_block_paper,{}\npoonen_block_naive,{}\nmerge_saving,{}\npaper_total,{}\nnaive_total,{}\n",
                        l.witness_pair, l.phi_block, l.poonen_paper, l.poonen_naive, l.merge_saving, l.paper_total, l.naive_total
                    ),
                };
                self.emit(&doc)
            }
            Cmd::Selftest => self.emit_report(&selftest(&self.suite_config())?),
            Cmd::Suite { name } => self.emit_report(&run_suite(name, &self.suite_config())?),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

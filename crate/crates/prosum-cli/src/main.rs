//! Command-line front door: parse a structured input document, run the
//! requested verification, and emit a deterministic report.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical check failed,
//! 2 = input or usage error.

mod commands;
mod doc;
mod report;

use std::time::Instant;

use commands::Options;

const USAGE: &str = "\
prosum <subcommand> [options]

subcommands:
  mackey            verify the Mackey decomposition for a (G, H, K, M) case
  pd                bounded projective dimension of a module
  projective        projectivity with a counit-section witness
  tor               Tor dimension of a right module against a left module
  ext               Ext dimension between two modules
  bundle-sum        direct sum of a bundle with injection checks
  bundle-tensor     fiberwise tensor product and the sum-commutation iso
  cosheaf-check     cosheaf axiom over every subset and partition
  tower-check       limit/surjectivity checks on a tower
  factor            least level a morphism factors through
  exproj            splitting obstruction for the lumping towers
  meldec            orbit decomposition of a permutation module
  tree-resolution   exactness of the tree resolution and pd transfer
  sweep             seeded verification suites

options:
  --in <path>            input document (required by document subcommands)
  --out <path>           write the report to a file instead of stdout
  --seed <u64>           seed for seeded sweeps (default 0)
  --cutoff <n>           projective-dimension cutoff (default 4)
  --max-group-order <n>  cap on generated group order (default 5040)
  --suite <name>         sweep suite: mackey-small, impcorr, peterlem,
                         tensorcomm, universal-props, solver-oracle
  --p <prime>            exproj: field characteristic
  --dim <n>              exproj: fiber dimension
  --depth <n>            exproj: tower depth
  --max-level <n>        factor: restrict the level search
";

fn fail_usage(msg: &str) -> ! {
    eprintln!("error: {}", msg);
    eprintln!();
    eprintln!("{}", USAGE);
    std::process::exit(2);
}

fn parse_args() -> (String, Option<std::path::PathBuf>, Option<std::path::PathBuf>, Options) {
    let mut args = std::env::args().skip(1);
    let Some(subcommand) = args.next() else {
        fail_usage("missing subcommand");
    };
    if subcommand == "--help" || subcommand == "-h" || subcommand == "help" {
        println!("{}", USAGE);
        std::process::exit(0);
    }
    let mut input = None;
    let mut out = None;
    let mut opts = Options::default();
    let next_value = |args: &mut dyn Iterator<Item = String>, flag: &str| -> String {
        match args.next() {
            Some(v) => v,
            None => fail_usage(&format!("flag {} needs a value", flag)),
        }
    };
    while let Some(flag) = args.next() {
        match flag.as_str() {
            "--in" => input = Some(next_value(&mut args, "--in").into()),
            "--out" => out = Some(next_value(&mut args, "--out").into()),
            "--seed" => {
                opts.seed = next_value(&mut args, "--seed")
                    .parse()
                    .unwrap_or_else(|_| fail_usage("--seed needs an unsigned integer"))
            }
            "--cutoff" => {
                opts.cutoff = next_value(&mut args, "--cutoff")
                    .parse()
                    .unwrap_or_else(|_| fail_usage("--cutoff needs an unsigned integer"))
            }
            "--max-group-order" => {
                opts.max_group_order = next_value(&mut args, "--max-group-order")
                    .parse()
                    .unwrap_or_else(|_| fail_usage("--max-group-order needs an unsigned integer"))
            }
            "--suite" => opts.suite = Some(next_value(&mut args, "--suite")),
            "--p" => {
                opts.p = Some(
                    next_value(&mut args, "--p")
                        .parse()
                        .unwrap_or_else(|_| fail_usage("--p needs a prime number")),
                )
            }
            "--dim" => {
                opts.dim = Some(
                    next_value(&mut args, "--dim")
                        .parse()
                        .unwrap_or_else(|_| fail_usage("--dim needs an unsigned integer")),
                )
            }
            "--depth" => {
                opts.depth = Some(
                    next_value(&mut args, "--depth")
                        .parse()
                        .unwrap_or_else(|_| fail_usage("--depth needs an unsigned integer")),
                )
            }
            "--max-level" => {
                opts.max_level = Some(
                    next_value(&mut args, "--max-level")
                        .parse()
                        .unwrap_or_else(|_| fail_usage("--max-level needs an unsigned integer")),
                )
            }
            other => fail_usage(&format!("unknown flag '{}'", other)),
        }
    }
    (subcommand, input, out, opts)
}

fn main() {
    let (subcommand, input, out, opts) = parse_args();
    let started = Instant::now();

    let mut input_text = None;
    let resolved = match &input {
        None => None,
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => fail_usage(&format!("cannot read {}: {}", path.display(), e)),
            };
            let entities = match doc::parse_document(&text) {
                Ok(es) => es,
                Err(e) => fail_usage(&format!("{}: {}", path.display(), e)),
            };
            let resolved = match doc::resolve(entities, opts.max_group_order) {
                Ok(d) => Some(d),
                Err(e) => fail_usage(&format!("{}: {}", path.display(), e)),
            };
            input_text = Some(text);
            resolved
        }
    };

    let mut report = match commands::dispatch(&subcommand, resolved.as_ref(), &opts) {
        Ok(r) => r,
        Err(e) => fail_usage(&e.0),
    };
    if let Some(text) = &input_text {
        report.attach_repro(text);
    }

    let rendered = report.render();
    match &out {
        None => print!("{}", rendered),
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                fail_usage(&format!("cannot write {}: {}", path.display(), e));
            }
        }
    }
    eprintln!(
        "prosum: {} finished in {} ms",
        subcommand,
        started.elapsed().as_millis()
    );
    std::process::exit(report.exit_code());
}

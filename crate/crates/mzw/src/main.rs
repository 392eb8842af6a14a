use std::io::{BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mzw::run::{exec_stmt, run_source, Outcome, EXIT_ERROR};
use mzw::{parse_program, Backend, Session};

#[derive(Parser)]
#[command(name = "mzw", version, about = "Exact motivic zeta functions, determinants and functional equations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Backend for new sessions.
    #[arg(long, value_enum, default_value = "frob", global = true)]
    backend: BackendArg,
    /// Truncation order for commands that do not give `--order`.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Seed for `random()`.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Writes the JSON records of all commands to this file.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Runs a `.mz` program.
    Run { file: PathBuf },
    /// Reads statements from standard input.
    Repl,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Sym,
    Frob,
}

fn session(cli: &Cli) -> Session {
    let b = match cli.backend {
        BackendArg::Sym => Backend::Symbolic,
        BackendArg::Frob => Backend::Frobenius,
    };
    let mut s = Session::new(b, cli.seed);
    s.order = cli.order;
    s
}

fn run_file(cli: &Cli, file: &Path) -> Outcome {
    let mut s = session(cli);
    s.base_dir = file.parent().map(Path::to_path_buf).unwrap_or_default();
    match std::fs::read_to_string(file) {
        Ok(src) => run_source(&mut s, &src),
        Err(e) => {
            Outcome { stderr: format!("error: {}: {e}\n", file.display()), code: EXIT_ERROR, ..Outcome::default() }
        }
    }
}

/// Executes each statement as soon as a line completes it.
fn repl(cli: &Cli) -> Outcome {
    let mut s = session(cli);
    let mut total = Outcome::default();
    let stdin = std::io::stdin();
    let interactive = stdin.is_terminal();
    let mut buf = String::new();
    let prompt = |cont: bool| {
        if interactive {
            print!("{}", if cont { "...> " } else { "mzw> " });
            let _ = std::io::stdout().flush();
        }
    };
    prompt(false);
    for line in stdin.lock().lines() {
        let Ok(line) = line else { break };
        buf.push_str(&line);
        buf.push('\n');
        if !line.trim_end().ends_with(';') {
            prompt(true);
            continue;
        }
        let mut out = Outcome::default();
        match parse_program(&buf) {
            Ok(p) => {
                for stmt in &p.stmts {
                    if let Err(e) = exec_stmt(&mut s, stmt, &mut out) {
                        out.stderr += &format!("error: in `{stmt}`: {e}\n");
                        out.code = EXIT_ERROR;
                        break;
                    }
                }
            }
            Err(e) => {
                out.stderr += &format!("error: parse error at {e}\n");
                out.code = EXIT_ERROR;
            }
        }
        print!("{}", out.stdout);
        eprint!("{}", out.stderr);
        total.reports.extend(out.reports);
        total.code = total.code.max(out.code);
        buf.clear();
        prompt(false);
    }
    total.code = total.code.max(if buf.trim().is_empty() { 0 } else { EXIT_ERROR });
    total
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Run { file } => {
            let out = run_file(&cli, file);
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            out
        }
        Cmd::Repl => repl(&cli),
    };
    let mut code = out.code;
    if let Some(path) = &cli.json {
        let text = serde_json::to_string_pretty(&out.reports).expect("serializable") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            code = EXIT_ERROR;
        }
    }
    ExitCode::from(code as u8)
}

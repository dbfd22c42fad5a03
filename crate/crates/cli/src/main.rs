// SPDX-License-Identifier: Apache-2.0

//! `chemdata`: validate, convert and upload molecular documents, or run the
//! data server.
//!
//! Exit status: 0 on success, 1 when a document is invalid or rejected,
//! 2 on I/O, network, authentication or usage errors.

mod input;

use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chemdata::{Document, Format};
use chemdata_server::config::{DEFAULT_BODY_LIMIT, DEFAULT_LISTEN};
use chemdata_server::ServerConfig;
use clap::{Parser, Subcommand, ValueEnum};

use input::{load, InputKind};

#[derive(Parser)]
#[command(name = "chemdata", version, about = "Chemical JSON and ExtendedChem JSON tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Cjson,
    Extchem,
}

impl From<Target> for Format {
    fn from(t: Target) -> Format {
        match t {
            Target::Cjson => Format::Cjson,
            Target::Extchem => Format::ExtChem,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a document and print every rule it breaks.
    Validate { file: PathBuf },
    /// Convert a document or log file to either JSON format.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the Hill formula of the document's molecule.
    Formula { file: PathBuf },
    /// Send documents to a server; prints one id per file.
    Upload {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, env = "CHEMDATA_SERVER")]
        server: String,
        #[arg(long, env = "CHEMDATA_TOKEN", hide_env_values = true)]
        token: String,
    },
    /// Run the HTTP data server.
    Serve {
        #[arg(long, env = "CHEMDATA_DATA")]
        data: PathBuf,
        #[arg(long, env = "CHEMDATA_LISTEN", default_value = DEFAULT_LISTEN)]
        listen: SocketAddr,
        #[arg(long, env = "CHEMDATA_TOKEN", hide_env_values = true)]
        token: String,
        /// Largest accepted request body in bytes.
        #[arg(long, env = "CHEMDATA_BODY_LIMIT", default_value_t = DEFAULT_BODY_LIMIT)]
        body_limit: usize,
    },
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn open_document(path: &Path) -> Result<Document, Failure> {
    let text = read(path)?;
    load(InputKind::of(path, &text), &text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn validate(file: &Path) -> Outcome {
    let text = read(file)?;
    let violations = match load(InputKind::of(file, &text), &text) {
        Ok(doc) => doc.validate(),
        Err(e) => e.violations(),
    };
    if violations.is_empty() {
        println!("{}: ok", file.display());
        return Ok(());
    }
    for v in &violations {
        println!("{}: {v}", file.display());
    }
    Err(Failure::invalid(format!("{}: {} violation(s)", file.display(), violations.len())))
}

fn convert(input: &Path, to: Format, output: Option<&Path>) -> Outcome {
    let doc = open_document(input)?;
    let text = doc
        .render(to)
        .map_err(|e| Failure::invalid(format!("{}: {e}", input.display())))?;
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(e.to_string())),
    }
}

fn formula(file: &Path) -> Outcome {
    let doc = open_document(file)?;
    let f = doc.formula().map_err(|e| Failure::invalid(e.to_string()))?;
    println!("{f}");
    Ok(())
}

/// Uploads each file in order. A failed file is reported and skipped; the
/// exit status reflects the worst failure.
fn upload(files: &[PathBuf], server: &str, token: &str) -> Outcome {
    let client = reqwest::blocking::Client::new();
    let url = format!("{}/api/v1/molecules", server.trim_end_matches('/'));
    let mut worst: Option<Failure> = None;

    for file in files {
        match upload_one(&client, &url, token, file) {
            Ok(id) => println!("{id}  {}", file.display()),
            Err(f) => {
                eprintln!("chemdata: {}", f.message);
                if worst.as_ref().is_none_or(|w| f.code > w.code) {
                    worst = Some(f);
                }
            }
        }
    }
    match worst {
        None => Ok(()),
        Some(f) => Err(Failure {
            message: "some files were not uploaded".into(),
            ..f
        }),
    }
}

fn upload_one(client: &reqwest::blocking::Client, url: &str, token: &str, file: &Path) -> Result<String, Failure> {
    let text = read(file)?;
    let kind = InputKind::of(file, &text);
    // logs are converted locally; the server only takes JSON documents
    let (body, format) = match kind {
        InputKind::Log => {
            let doc = load(kind, &text).map_err(|e| Failure::invalid(format!("{}: {e}", file.display())))?;
            let body = doc
                .canonical_text()
                .map_err(|e| Failure::invalid(format!("{}: {e}", file.display())))?;
            (body, Some(Format::ExtChem))
        }
        other => (text, other.declared_format()),
    };

    let mut request = client.post(url).bearer_auth(token).body(body);
    if let Some(f) = format {
        request = request.query(&[("format", f.as_str())]);
    }
    let response = request
        .send()
        .map_err(|e| Failure::io(format!("{}: {e}", file.display())))?;
    let status = response.status();
    let reply: serde_json::Value = response
        .text()
        .ok()
        .and_then(|t| serde_json::from_str(&t).ok())
        .ok_or_else(|| Failure::io(format!("{}: unreadable response ({status})", file.display())))?;
    if status.is_success() {
        return reply["id"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| Failure::io(format!("{}: response has no id", file.display())));
    }
    let message = reply["error"]["message"].as_str().unwrap_or("request failed");
    let detail = format!("{}: server answered {status}: {message}", file.display());
    if status.is_client_error() && status != reqwest::StatusCode::UNAUTHORIZED {
        Err(Failure::invalid(detail))
    } else {
        Err(Failure::io(detail))
    }
}

fn serve(config: ServerConfig) -> Outcome {
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::io(e.to_string()))?;
    runtime.block_on(async {
        let bound = chemdata_server::bind(&config)
            .await
            .map_err(|e| Failure::io(format!("cannot start server: {e}")))?;
        let addr = bound.local_addr().map_err(|e| Failure::io(e.to_string()))?;
        println!("listening on http://{addr}");
        let _ = std::io::stdout().flush();
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        bound.run(shutdown).await.map_err(|e| Failure::io(e.to_string()))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("info")),
        )
        .init();

    let outcome = match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Convert { input, to, output } => convert(&input, to.into(), output.as_deref()),
        Command::Formula { file } => formula(&file),
        Command::Upload { files, server, token } => upload(&files, &server, &token),
        Command::Serve {
            data,
            listen,
            token,
            body_limit,
        } => serve(ServerConfig {
            listen,
            data_dir: data,
            token,
            body_limit,
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("chemdata: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

mod args;
mod commands;
mod error;
mod manifest;
mod table;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format};
use error::CliError;
use manifest::{OutputDigest, RunManifest};

const OUT_DIR_VAR: &str = "ZETALAB_OUT_DIR";

fn out_dir(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("zetalab-out"))
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339()
}

/// Runs one invocation; `None` when only help or version was printed.
fn run(argv: Vec<String>) -> Result<Option<RunManifest>, CliError> {
    let argv = args::expand_config(argv)?;
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(None);
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    if let Command::Replay { manifest, out } = &cli.command {
        return replay(manifest, out.as_deref()).map(Some);
    }
    let common = cli.command.common().expect("every other command has common flags");
    let started = now();
    let outcome = commands::execute(&cli.command)?;
    for line in &outcome.summary {
        println!("{line}");
    }
    let dir = out_dir(common.out.as_deref());
    fs::create_dir_all(&dir)?;
    let name = cli.command.name();
    let mut outputs = Vec::new();
    for t in &outcome.tables {
        let stem = if t.name.is_empty() { name.to_string() } else { format!("{name}.{}", t.name) };
        let file = match common.format {
            Format::Csv => format!("{stem}.csv"),
            Format::Json => format!("{stem}.json"),
        };
        let path = dir.join(&file);
        match common.format {
            Format::Csv => t.write_csv(fs::File::create(&path)?)?,
            Format::Json => fs::write(&path, serde_json::to_string_pretty(&t.to_json())?)?,
        }
        outputs.push(OutputDigest {
            sha256: manifest::sha256_file(&path)?,
            file,
        });
    }
    let mut parameters = serde_json::to_value(&cli.command)?;
    if let (Some(extra), Some(map)) = (outcome.parameters, parameters.as_object_mut()) {
        map.insert("resolved".into(), extra);
    }
    let m = RunManifest {
        command: name.to_string(),
        argv: manifest::reproducible_argv(&argv),
        parameters,
        seed: Some(common.seed),
        workers: Some(common.workers),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        started,
        finished: now(),
        outputs,
    };
    let mpath = manifest::manifest_path(&dir, name);
    fs::write(&mpath, serde_json::to_string_pretty(&m)?)?;
    println!("wrote {} file(s) and {}", m.outputs.len(), mpath.display());
    Ok(Some(m))
}

fn replay(path: &Path, out: Option<&Path>) -> Result<RunManifest, CliError> {
    let original = manifest::load(path)?;
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| {
        path.parent().unwrap_or(Path::new(".")).join("replay")
    });
    let mut argv = vec!["zetalab".to_string()];
    argv.extend(original.argv.iter().cloned());
    argv.push("--out".into());
    argv.push(dir.display().to_string());
    let again = run(argv)?.ok_or_else(|| CliError::Usage("manifest does not describe a run".into()))?;
    let bad = manifest::differing_outputs(&original, &again);
    if bad.is_empty() {
        println!("replay identical: true ({} file(s))", again.outputs.len());
        Ok(again)
    } else {
        Err(CliError::Mismatch(bad.join(", ")))
    }
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zetalab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

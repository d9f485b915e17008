//! The two-generator presentation assembled from labelled net graphs.
//!
//! Reads `data/eo_tiny.toml` unless another config path is given.

use std::path::PathBuf;

use relhyp::netapprox::{build_eo_presentation, EOConfig};

fn main() -> relhyp::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data/eo_tiny.toml"));
    let cfg = EOConfig::from_file(&path)?;
    let spaces = cfg.build_spaces()?;
    let build = build_eo_presentation(&cfg, &spaces)?;
    let d = &build.diagnostics;

    println!("d_n = {:?}, {} word orbits available", d.d_seq, d.word_orbits);
    for inst in &d.sequence {
        println!("  stage {} {}: {} [{}]", inst.stage, inst.condition, inst.statement, if inst.holds { "ok" } else { "fails" });
    }
    for s in &d.stages {
        let worst = s.audit.iter().map(|a| a.cancelled).max().unwrap_or(0);
        println!(
            "stage {}: net of {} points, {} edges, {} relators, most letters cancelled {worst}",
            s.n, s.net_size, s.edges, s.relators
        );
    }
    println!("largest piece ratio {:?}", d.c_prime_measured);

    let text = build.presentation.to_string();
    println!("presentation ({} bytes): {}...", text.len(), &text[..text.len().min(120)]);
    Ok(())
}

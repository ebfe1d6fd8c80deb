//! Result emission: newline-delimited JSON records plus a flat CSV summary.
//! Output is ordered by instance key and serialized with stable field
//! order, so identical records produce byte-identical files.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::record::InstanceRecord;

pub struct EmittedFiles {
    pub jsonl: PathBuf,
    pub csv: PathBuf,
}

pub fn emit_results(records: &[InstanceRecord], out_dir: &Path) -> anyhow::Result<EmittedFiles> {
    std::fs::create_dir_all(out_dir)?;
    let mut sorted: Vec<&InstanceRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.key.cmp(&b.key));

    let jsonl_path = out_dir.join("results.jsonl");
    let mut jsonl = Vec::new();
    for rec in &sorted {
        serde_json::to_writer(&mut jsonl, rec)?;
        jsonl.push(b'\n');
    }
    std::fs::write(&jsonl_path, &jsonl)?;

    let csv_path = out_dir.join("summary.csv");
    let mut csv = Vec::new();
    writeln!(
        csv,
        "key,family,p,d,v_size,group_order,orbit_count,diamd,diam,summand_count,assertions,failed"
    )?;
    for rec in &sorted {
        let failed = rec.failed_assertions().count();
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            rec.key,
            rec.family,
            rec.p,
            rec.d,
            rec.v_size,
            rec.group_order.map_or(String::from("cap"), |o| o.to_string()),
            rec.orbit_count,
            rec.diamd.map_or(String::new(), |v| v.to_string()),
            rec.diam.map_or(String::new(), |v| v.to_string()),
            rec.summand_count.map_or(String::new(), |v| v.to_string()),
            rec.assertions.len(),
            failed,
        )?;
    }
    std::fs::write(&csv_path, &csv)?;

    Ok(EmittedFiles {
        jsonl: jsonl_path,
        csv: csv_path,
    })
}

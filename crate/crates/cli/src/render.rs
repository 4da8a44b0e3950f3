use std::fmt::Write as _;
use std::io::Write as _;

use esd_core::{edge_weights, Graph, Labeling};

use crate::commands::Report;
use crate::Format;

pub fn emit(report: &Report, format: Format) -> Result<(), String> {
    let text = match format {
        Format::Json => format!("{}\n", report.json),
        Format::Table => report.table.clone(),
        Format::Dot => report
            .dot
            .clone()
            .ok_or_else(|| "this command has no DOT output".to_string())?,
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    stdout.flush().map_err(|e| e.to_string())
}

pub fn graph_table(g: &Graph) -> String {
    let mut out = format!("n = {}, |E| = {}\n", g.n(), g.edge_count());
    for v in g.vertices() {
        let nbrs: Vec<String> = g.neighbors(v).iter().map(|u| format!("v{u}")).collect();
        writeln!(out, "v{v}: {}", nbrs.join(" ")).unwrap();
    }
    out
}

pub fn labeling_table(g: &Graph, phi: &Labeling) -> String {
    let mut out = String::from("vertex  label\n");
    for v in g.vertices() {
        let label = phi.get(v).map_or("-".to_string(), |a| a.to_string());
        writeln!(out, "{:<6}  {label}", format!("v{v}")).unwrap();
    }
    out.push_str("edge      weight\n");
    for (e, w) in edge_weights(g, phi) {
        writeln!(out, "{:<8}  {w}", e.to_string()).unwrap();
    }
    out
}

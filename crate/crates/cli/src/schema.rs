use clap::ValueEnum;
use schemars::{schema_for, Schema};

use starcodes::claims::Matrix;
use starcodes::codes::DominationReport;
use starcodes::decomp::ComponentCensus;
use starcodes::report::VerificationReport;
use starcodes::stargraph::ImplicitCensus;

use crate::manifest::RunManifest;

/// Report types with a published schema. The shipped files under
/// `schemas/` are `render(name)` for each of these.
#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SchemaName {
    RunManifest,
    VerificationReport,
    DominationReport,
    ComponentCensus,
    ImplicitCensus,
    Matrix,
}

pub fn render(name: SchemaName) -> String {
    let schema: Schema = match name {
        SchemaName::RunManifest => schema_for!(RunManifest),
        SchemaName::VerificationReport => schema_for!(VerificationReport),
        SchemaName::DominationReport => schema_for!(DominationReport),
        SchemaName::ComponentCensus => schema_for!(ComponentCensus),
        SchemaName::ImplicitCensus => schema_for!(ImplicitCensus),
        SchemaName::Matrix => schema_for!(Matrix),
    };
    let mut text = serde_json::to_string_pretty(&schema).expect("schemas serialize");
    text.push('\n');
    text
}

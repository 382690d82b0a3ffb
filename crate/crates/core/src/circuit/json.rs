use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::Schedule;

pub const SCHEDULE_FORMAT: &str = "knill2d.schedule";
pub const SCHEDULE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("expected format {SCHEDULE_FORMAT:?} v{SCHEDULE_VERSION}, found {format:?} v{version}")]
    Format { format: String, version: u32 },
}

#[derive(Serialize, Deserialize)]
struct Document<S> {
    format: String,
    version: u32,
    schedule: S,
}

pub fn schedule_to_json(s: &Schedule) -> String {
    let doc = Document { format: SCHEDULE_FORMAT.to_string(), version: SCHEDULE_VERSION, schedule: s };
    serde_json::to_string_pretty(&doc).expect("schedules always serialize")
}

pub fn schedule_from_json(text: &str) -> Result<Schedule, JsonError> {
    let doc: Document<Schedule> = serde_json::from_str(text)?;
    if doc.format != SCHEDULE_FORMAT || doc.version != SCHEDULE_VERSION {
        return Err(JsonError::Format { format: doc.format, version: doc.version });
    }
    Ok(doc.schedule)
}

/// SHA-256 of the compact serialization, hex encoded.
pub fn content_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable value");
    hex::encode(Sha256::digest(&bytes))
}

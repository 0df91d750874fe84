//! Machine-readable run reports. A report contains no timestamps or timings, so
//! equal inputs and seeds give byte-identical output.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub result: serde_json::Value,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: u64) -> RunReport {
        RunReport { command: command.into(), inputs: Vec::new(), seed, result: serde_json::Value::Null, checks: Vec::new() }
    }

    pub fn add_input(&mut self, name: impl Into<String>, bytes: &[u8]) {
        self.inputs.push(InputDigest { name: name.into(), sha256: digest(bytes) });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_deterministic() {
        let make = || {
            let mut r = RunReport::new("lk", 7);
            r.add_input("a.json", b"{}");
            r.result = serde_json::json!({"lk": 1});
            r.checks.push(Check::new("oracle", true, "agrees"));
            r.to_json()
        };
        assert_eq!(make(), make());
        assert!(make().contains("44136fa355b3678a1146ad16f7e8649e94fb4fc21fe77e8310c060f61caaff8a"));
    }
}

//! Plain-text GroundTask files.
//!
//! ```text
//! props:
//! p
//! q
//! action a: pre=p; add=q; del=
//! init:
//! p
//! goal:
//! q
//! ```

use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

use crate::model::{canonicalize, GroundAction, GroundTask, Name};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct InterchangeError {
    pub line: usize,
    pub message: String,
}

fn words(set: &BTreeSet<Name>) -> String {
    set.iter().map(Name::as_str).collect::<Vec<_>>().join(" ")
}

/// Byte-deterministic: every section is written in canonical order.
pub fn write_task(task: &GroundTask) -> String {
    let mut out = String::from("props:\n");
    for p in &task.props {
        writeln!(out, "{p}").unwrap();
    }
    let mut actions: Vec<&GroundAction> = task.actions.iter().collect();
    actions.sort_by(|a, b| a.name.cmp(&b.name));
    for a in actions {
        writeln!(
            out,
            "action {}: pre={}; add={}; del={}",
            a.name,
            words(&a.pre),
            words(&a.add),
            words(&a.del)
        )
        .unwrap();
    }
    out.push_str("init:\n");
    for p in &task.init.true_props {
        writeln!(out, "{p}").unwrap();
    }
    out.push_str("goal:\n");
    for p in &task.goal {
        writeln!(out, "{p}").unwrap();
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Props,
    Init,
    Goal,
}

pub fn read_task(text: &str) -> Result<GroundTask, InterchangeError> {
    let mut task = GroundTask::default();
    let mut section = Section::None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |message: String| InterchangeError { line, message };
        let name = |s: &str| Name::new(s).map_err(|e| err(e.to_string()));
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        match content {
            "props:" => section = Section::Props,
            "init:" => section = Section::Init,
            "goal:" => section = Section::Goal,
            _ if content.starts_with("action ") => {
                let rest = &content["action ".len()..];
                let (action, sets) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `action NAME: pre=...; add=...; del=...`".into()))?;
                let mut fields = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
                let parts: Vec<&str> = sets.split(';').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(err("expected three fields pre=, add=, del=".into()));
                }
                for (slot, (part, key)) in parts.iter().zip(["pre=", "add=", "del="]).enumerate() {
                    let list = part
                        .strip_prefix(key)
                        .ok_or_else(|| err(format!("expected `{key}`")))?;
                    for w in list.split_whitespace() {
                        fields[slot].insert(name(w)?);
                    }
                }
                let [pre, add, del] = fields;
                task.actions.push(GroundAction { name: name(action.trim())?, pre, add, del });
            }
            _ => {
                let p = name(content)?;
                match section {
                    Section::Props => task.props.insert(p),
                    Section::Init => task.init.true_props.insert(p),
                    Section::Goal => task.goal.insert(p),
                    Section::None => return Err(err("item outside of a section".into())),
                };
            }
        }
    }
    canonicalize(task).map_err(|e| InterchangeError { line: 0, message: e.to_string() })
}

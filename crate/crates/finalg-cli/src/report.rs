//! Report assembly and emission. Text and structured renderings are built
//! from one ordered fact list, so they agree by construction and are
//! deterministic byte-for-byte.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum FieldValue {
    Text(String),
    Int(i64),
    Bool(bool),
    List(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub name: String,
    pub kind: String,
    pub verdict: String,
    pub positive: bool,
    pub window: bool,
    pub fields: Vec<(String, FieldValue)>,
}

impl Item {
    pub fn new(name: impl Into<String>, kind: impl Into<String>) -> Item {
        Item {
            name: name.into(),
            kind: kind.into(),
            verdict: String::new(),
            positive: true,
            window: false,
            fields: Vec::new(),
        }
    }

    pub fn verdict(mut self, verdict: impl Into<String>, positive: bool) -> Item {
        self.verdict = verdict.into();
        self.positive = positive;
        self
    }

    pub fn window(mut self, window: bool) -> Item {
        self.window = window;
        self
    }

    pub fn field(mut self, key: impl Into<String>, value: FieldValue) -> Item {
        self.fields.push((key.into(), value));
        self
    }

    pub fn text_field(self, key: impl Into<String>, value: impl Into<String>) -> Item {
        self.field(key, FieldValue::Text(value.into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub items: Vec<Item>,
    pub exit: i32,
}

impl Report {
    pub fn new(command: impl Into<String>, items: Vec<Item>) -> Report {
        let exit = if items.iter().all(|i| i.positive) { 0 } else { 1 };
        Report { command: command.into(), items, exit }
    }

    pub fn emit_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for item in &self.items {
            out.push_str(&format!("{} [{}]: {}", item.name, item.kind, item.verdict));
            if item.window {
                out.push_str(" (verified-on-window)");
            }
            out.push('\n');
            for (key, value) in &item.fields {
                match value {
                    FieldValue::Text(s) => out.push_str(&format!("  {key}: {s}\n")),
                    FieldValue::Int(v) => out.push_str(&format!("  {key}: {v}\n")),
                    FieldValue::Bool(b) => out.push_str(&format!("  {key}: {b}\n")),
                    FieldValue::List(items) => {
                        out.push_str(&format!("  {key}: {}\n", items.join(", ")))
                    }
                }
            }
        }
        out.push_str(&format!("exit: {}\n", self.exit));
        out
    }

    pub fn emit_structured(&self) -> String {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|item| {
                let mut obj = Map::new();
                obj.insert("name".into(), json!(item.name));
                obj.insert("kind".into(), json!(item.kind));
                obj.insert("verdict".into(), json!(item.verdict));
                if item.window {
                    obj.insert("window".into(), json!(true));
                }
                for (key, value) in &item.fields {
                    let v = match value {
                        FieldValue::Text(s) => json!(s),
                        FieldValue::Int(v) => json!(v),
                        FieldValue::Bool(b) => json!(b),
                        FieldValue::List(items) => json!(items),
                    };
                    obj.insert(key.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let root = json!({
            "command": self.command,
            "items": items,
            "exit": self.exit,
        });
        let mut out = serde_json::to_string_pretty(&root).expect("serialize report");
        out.push('\n');
        out
    }
}

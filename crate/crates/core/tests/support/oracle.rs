//! Brute-force reference for event stitching.
//!
//! Shares no code with the library: plain vectors, linear scans, and its own
//! label normalization. Used to cross-check `Session` on random streams.

#![allow(dead_code)]

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ev<'a> {
    Vertex(&'a str),
    Edge(&'a str),
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Reference {
    /// Vertex names in creation order.
    pub vertices: Vec<String>,
    /// (edge name, source vertex name, target vertex name) in creation order.
    pub edges: Vec<(String, String, String)>,
    pub start: Option<String>,
    cursor: Option<String>,
    pending: Option<String>,
}

fn vertex_name(raw: &str) -> Option<String> {
    let body = raw.strip_prefix("v_").unwrap_or(raw);
    let mut out = String::new();
    for word in body.split_whitespace() {
        let kept: Vec<char> = word.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        for (i, c) in kept.into_iter().enumerate() {
            out.push(if i == 0 { c.to_ascii_uppercase() } else { c });
        }
    }
    (!out.is_empty()).then(|| format!("v_{out}"))
}

fn edge_name(raw: &str) -> Option<String> {
    let body = raw.strip_prefix("e_").unwrap_or(raw);
    let out: String = body
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_uppercase())
        .collect();
    (!out.is_empty()).then(|| format!("e_{out}"))
}

impl Reference {
    fn add_edge(&mut self, name: String, from: String, to: String) {
        let triple = (name, from, to);
        if !self.edges.contains(&triple) {
            self.edges.push(triple);
        }
    }

    pub fn apply(&mut self, ev: Ev<'_>) {
        match ev {
            Ev::Vertex(raw) => {
                let Some(v) = vertex_name(raw) else { return };
                if !self.vertices.contains(&v) {
                    self.vertices.push(v.clone());
                }
                if self.start.is_none() {
                    self.start = Some(v.clone());
                }
                if let Some(e) = self.pending.take() {
                    let from = self.cursor.clone().unwrap_or_else(|| v.clone());
                    self.add_edge(e, from, v.clone());
                } else if let Some(from) = self.cursor.clone() {
                    if from != v {
                        let loaded = format!("e_LOADED_{}", v[2..].to_ascii_uppercase());
                        self.add_edge(loaded, from, v.clone());
                    }
                }
                self.cursor = Some(v);
            }
            Ev::Edge(raw) => {
                let Some(e) = edge_name(raw) else { return };
                self.flush();
                self.pending = Some(e);
            }
        }
    }

    fn flush(&mut self) {
        if let Some(p) = self.pending.take() {
            if let Some(at) = self.cursor.clone() {
                self.add_edge(p, at.clone(), at);
            }
        }
    }

    /// Closes any pending edge and drops the cursor, leaving only the graph.
    pub fn settled(mut self) -> Self {
        self.flush();
        self.cursor = None;
        self
    }

    /// Replays `events` from scratch.
    pub fn build(events: &[Ev<'_>]) -> Self {
        let mut r = Reference::default();
        for &e in events {
            r.apply(e);
        }
        r
    }
}

//! Name normalization for vertices (`v_` + CamelCase) and edges (`e_` + UPPERCASE).

use crate::error::ModelError;

pub const VERTEX_PREFIX: &str = "v_";
pub const EDGE_PREFIX: &str = "e_";

/// Turns a page label into a vertex name: `"Welcome Page"` becomes `"v_WelcomePage"`.
///
/// Each whitespace-separated word is stripped to ASCII alphanumerics and has
/// its first character uppercased; the words are then concatenated. A label
/// that already carries the `v_` prefix is not prefixed twice.
pub fn sanitize_vertex_name(raw: &str) -> Result<String, ModelError> {
    let body = raw.strip_prefix(VERTEX_PREFIX).unwrap_or(raw);
    let mut out = String::from(VERTEX_PREFIX);
    for word in body.split_whitespace() {
        let mut chars = word.chars().filter(char::is_ascii_alphanumeric);
        if let Some(first) = chars.next() {
            out.push(first.to_ascii_uppercase());
            out.extend(chars);
        }
    }
    if out.len() == VERTEX_PREFIX.len() {
        return Err(ModelError::UnusableName(raw.to_owned()));
    }
    Ok(out)
}

/// Turns an action label into an edge name: `"Find Owners"` becomes `"e_FINDOWNERS"`.
pub fn sanitize_edge_name(raw: &str) -> Result<String, ModelError> {
    let body = raw.strip_prefix(EDGE_PREFIX).unwrap_or(raw);
    let mut out = String::from(EDGE_PREFIX);
    out.extend(
        body.chars()
            .map(|c| c.to_ascii_uppercase())
            .filter(|c| c.is_ascii_uppercase() || c.is_ascii_digit()),
    );
    if out.len() == EDGE_PREFIX.len() {
        return Err(ModelError::UnusableName(raw.to_owned()));
    }
    Ok(out)
}

pub(crate) fn is_vertex_name(name: &str) -> bool {
    name.len() > VERTEX_PREFIX.len() && name.starts_with(VERTEX_PREFIX)
}

pub(crate) fn is_edge_name(name: &str) -> bool {
    name.len() > EDGE_PREFIX.len() && name.starts_with(EDGE_PREFIX)
}

/// Name of the edge synthesized when a page loads without a preceding action.
pub(crate) fn loaded_edge_name(vertex_name: &str) -> String {
    let page = vertex_name.strip_prefix(VERTEX_PREFIX).unwrap_or(vertex_name);
    format!("{EDGE_PREFIX}LOADED_{}", page.to_ascii_uppercase())
}

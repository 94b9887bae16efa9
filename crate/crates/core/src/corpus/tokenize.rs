/// Splits a short social-media text into lowercase word tokens.
///
/// URLs (`http://` or `https://` up to the next whitespace) and `@mentions`
/// are dropped entirely. Hashtags keep their body. Everything that is not a
/// letter, a digit or an apostrophe between two word characters separates
/// tokens. Numbers survive, so dates like "9 februar 2019" stay visible in
/// term statistics.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().map(fold_case).collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut i = 0;

    while i < chars.len() {
        let c = chars[i];
        if c == 'h' && current.is_empty() && starts_url(&chars[i..]) {
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            continue;
        }
        if c == '@' {
            flush(&mut current, &mut tokens);
            i += 1;
            while i < chars.len() && (is_word_char(chars[i]) || chars[i] == '_') {
                i += 1;
            }
            continue;
        }
        if is_word_char(c) {
            current.push(c);
        } else if is_apostrophe(c)
            && !current.is_empty()
            && chars.get(i + 1).copied().is_some_and(is_word_char)
        {
            current.push(c);
        } else {
            flush(&mut current, &mut tokens);
        }
        i += 1;
    }
    flush(&mut current, &mut tokens);
    tokens
}

/// Single-character lowercase mapping. Multi-character expansions keep
/// their first character so one input char never becomes several.
pub(crate) fn fold_case(c: char) -> char {
    let mut lower = c.to_lowercase();
    lower.next().unwrap_or(c)
}

fn is_word_char(c: char) -> bool {
    c.is_alphabetic() || c.is_numeric()
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn starts_url(rest: &[char]) -> bool {
    const SCHEMES: [&str; 2] = ["http://", "https://"];
    SCHEMES.iter().any(|scheme| {
        scheme.chars().count() <= rest.len() && scheme.chars().zip(rest).all(|(a, &b)| a == b)
    })
}

fn flush(current: &mut String, tokens: &mut Vec<String>) {
    if !current.is_empty() {
        tokens.push(std::mem::take(current));
    }
}

use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("letter refers to generator {index} but the alphabet has {rank}")]
    AlphabetMismatch { index: usize, rank: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid enumeration limits: {0}")]
    InvalidLimits(String),

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("coset table is inconsistent: {0}")]
    InconsistentTable(String),

    #[error("coset enumeration exceeded {limit} cosets")]
    Overflow { limit: usize },

    #[error("no image given for generator `{0}`")]
    MissingImage(String),

    #[error("permutation representation is not regular")]
    NotRegular,

    #[error("inputs come from different enumerations: {0}")]
    Mismatch(String),

    #[error("integer overflow in {0}")]
    ArithmeticOverflow(&'static str),

    #[error("empty generator set")]
    EmptyGenerators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownGenerator,
    ExponentOverflow,
    InvalidInteger,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{} at byte {position}{}", describe(.kind), detail(.name))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
    /// The offending name for `UnknownGenerator`.
    pub name: Option<String>,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, position: usize) -> Self {
        Self {
            kind,
            position,
            name: None,
        }
    }
}

fn describe(kind: &ParseErrorKind) -> String {
    use alloc::format;
    match kind {
        ParseErrorKind::UnexpectedChar(c) => format!("syntax error: unexpected `{c}`"),
        ParseErrorKind::UnexpectedEnd => "syntax error: unexpected end of input".into(),
        ParseErrorKind::UnknownGenerator => "unknown generator".into(),
        ParseErrorKind::ExponentOverflow => "exponent overflow".into(),
        ParseErrorKind::InvalidInteger => "invalid integer".into(),
    }
}

fn detail(name: &Option<String>) -> String {
    use alloc::format;
    match name {
        Some(n) => format!(" (`{n}`)"),
        None => String::new(),
    }
}

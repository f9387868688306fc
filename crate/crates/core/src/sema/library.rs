//! The standard-library functions the checkers know about.

use super::TypeDesc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LibraryFamily {
    CtypeClassify,
    MemCompareCopy,
    StringUnbounded,
    StringBounded,
    StdioRead,
    StdioOther,
    EnvPointerReturning,
    ErrnoSetting,
    MemAlloc,
    SignalApi,
    ProcessControl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamRole {
    Buffer,
    Size,
    CharArg,
    FormatString,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnKind {
    Void,
    Int,
    Long,
    ULong,
    Double,
    SizeT,
    CharPtr,
    VoidPtr,
    FilePtr,
    LconvPtr,
}

impl ReturnKind {
    pub fn ty(self) -> TypeDesc {
        match self {
            ReturnKind::Void => TypeDesc::Void,
            ReturnKind::Int => TypeDesc::int(),
            ReturnKind::Long => TypeDesc::SignedInt(Some(8)),
            ReturnKind::ULong | ReturnKind::SizeT => TypeDesc::UnsignedInt(Some(8)),
            ReturnKind::Double => TypeDesc::Floating(Some(8)),
            ReturnKind::CharPtr => TypeDesc::pointer_to(TypeDesc::PlainChar),
            ReturnKind::VoidPtr => TypeDesc::pointer_to(TypeDesc::Void),
            ReturnKind::FilePtr => TypeDesc::pointer_to(TypeDesc::Struct("FILE".into())),
            ReturnKind::LconvPtr => TypeDesc::pointer_to(TypeDesc::Struct("lconv".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LibraryFunctionInfo {
    pub name: &'static str,
    pub header: &'static str,
    pub family: LibraryFamily,
    pub param_roles: &'static [ParamRole],
    /// Role of arguments past the fixed parameters, for variadic functions.
    pub variadic_role: Option<ParamRole>,
    pub ret: ReturnKind,
    pub returns_io_int: bool,
    pub returns_env_pointer: bool,
    /// The first argument is a destination the call writes into.
    pub writes_first_buffer: bool,
}

impl LibraryFunctionInfo {
    pub fn role_of(&self, arg_index: usize) -> ParamRole {
        self.param_roles.get(arg_index).copied().or(self.variadic_role).unwrap_or(ParamRole::Other)
    }

    /// Argument indices with the given role among `arg_count` actual arguments.
    pub fn args_with_role(&self, role: ParamRole, arg_count: usize) -> impl Iterator<Item = usize> + '_ {
        (0..arg_count).filter(move |&i| self.role_of(i) == role)
    }

    /// Reads bytes from outside the program (a stream).
    pub fn reads_external_input(&self) -> bool {
        self.family == LibraryFamily::StdioRead || self.name == "gets"
    }
}

use LibraryFamily::*;
use ParamRole::*;

const fn f(
    name: &'static str,
    header: &'static str,
    family: LibraryFamily,
    param_roles: &'static [ParamRole],
    variadic_role: Option<ParamRole>,
    ret: ReturnKind,
) -> LibraryFunctionInfo {
    LibraryFunctionInfo {
        name,
        header,
        family,
        param_roles,
        variadic_role,
        ret,
        returns_io_int: false,
        returns_env_pointer: matches!(family, EnvPointerReturning),
        writes_first_buffer: false,
    }
}

const fn io_int(mut info: LibraryFunctionInfo) -> LibraryFunctionInfo {
    info.returns_io_int = true;
    info
}

const fn writes(mut info: LibraryFunctionInfo) -> LibraryFunctionInfo {
    info.writes_first_buffer = true;
    info
}

const CHAR_ARG: &[ParamRole] = &[CharArg];
const BUF_BUF_SIZE: &[ParamRole] = &[Buffer, Buffer, Size];

pub static LIBRARY: &[LibraryFunctionInfo] = &[
    f("isalnum", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isalpha", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isblank", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("iscntrl", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isdigit", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isgraph", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("islower", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isprint", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("ispunct", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isspace", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isupper", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("isxdigit", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("tolower", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("toupper", "ctype.h", CtypeClassify, CHAR_ARG, None, ReturnKind::Int),
    f("memcmp", "string.h", MemCompareCopy, BUF_BUF_SIZE, None, ReturnKind::Int),
    writes(f("memcpy", "string.h", MemCompareCopy, BUF_BUF_SIZE, None, ReturnKind::VoidPtr)),
    writes(f("memmove", "string.h", MemCompareCopy, BUF_BUF_SIZE, None, ReturnKind::VoidPtr)),
    writes(f("strcpy", "string.h", StringUnbounded, &[Buffer, Buffer], None, ReturnKind::CharPtr)),
    writes(f("strcat", "string.h", StringUnbounded, &[Buffer, Buffer], None, ReturnKind::CharPtr)),
    writes(f("sprintf", "stdio.h", StringUnbounded, &[Buffer, FormatString], Some(Other), ReturnKind::Int)),
    writes(f("gets", "stdio.h", StringUnbounded, &[Buffer], None, ReturnKind::CharPtr)),
    writes(f("strncpy", "string.h", StringBounded, BUF_BUF_SIZE, None, ReturnKind::CharPtr)),
    writes(f("strncat", "string.h", StringBounded, BUF_BUF_SIZE, None, ReturnKind::CharPtr)),
    writes(f("snprintf", "stdio.h", StringBounded, &[Buffer, Size, FormatString], Some(Other), ReturnKind::Int)),
    io_int(f("fgetc", "stdio.h", StdioRead, &[Other], None, ReturnKind::Int)),
    io_int(f("getc", "stdio.h", StdioRead, &[Other], None, ReturnKind::Int)),
    io_int(f("getchar", "stdio.h", StdioRead, &[], None, ReturnKind::Int)),
    writes(f("fgets", "stdio.h", StdioRead, &[Buffer, Size, Other], None, ReturnKind::CharPtr)),
    writes(f("fread", "stdio.h", StdioRead, &[Buffer, Size, Size, Other], None, ReturnKind::SizeT)),
    f("fscanf", "stdio.h", StdioRead, &[Other, FormatString], Some(Buffer), ReturnKind::Int),
    f("scanf", "stdio.h", StdioRead, &[FormatString], Some(Buffer), ReturnKind::Int),
    f("printf", "stdio.h", StdioOther, &[FormatString], Some(Other), ReturnKind::Int),
    f("fprintf", "stdio.h", StdioOther, &[Other, FormatString], Some(Other), ReturnKind::Int),
    f("puts", "stdio.h", StdioOther, &[Other], None, ReturnKind::Int),
    f("fputs", "stdio.h", StdioOther, &[Other, Other], None, ReturnKind::Int),
    f("putchar", "stdio.h", StdioOther, &[Other], None, ReturnKind::Int),
    f("putc", "stdio.h", StdioOther, &[Other, Other], None, ReturnKind::Int),
    f("fputc", "stdio.h", StdioOther, &[Other, Other], None, ReturnKind::Int),
    f("fopen", "stdio.h", StdioOther, &[Other, Other], None, ReturnKind::FilePtr),
    f("fclose", "stdio.h", StdioOther, &[Other], None, ReturnKind::Int),
    f("fwrite", "stdio.h", StdioOther, &[Buffer, Size, Size, Other], None, ReturnKind::SizeT),
    f("fflush", "stdio.h", StdioOther, &[Other], None, ReturnKind::Int),
    f("fseek", "stdio.h", StdioOther, &[Other, Other, Other], None, ReturnKind::Int),
    f("rewind", "stdio.h", StdioOther, &[Other], None, ReturnKind::Void),
    f("feof", "stdio.h", StdioOther, &[Other], None, ReturnKind::Int),
    f("ferror", "stdio.h", StdioOther, &[Other], None, ReturnKind::Int),
    f("clearerr", "stdio.h", StdioOther, &[Other], None, ReturnKind::Void),
    f("perror", "stdio.h", StdioOther, &[Other], None, ReturnKind::Void),
    f("ungetc", "stdio.h", StdioOther, &[Other, Other], None, ReturnKind::Int),
    f("remove", "stdio.h", StdioOther, &[Other], None, ReturnKind::Int),
    f("rename", "stdio.h", StdioOther, &[Other, Other], None, ReturnKind::Int),
    f("getenv", "stdlib.h", EnvPointerReturning, &[Other], None, ReturnKind::CharPtr),
    f("setlocale", "locale.h", EnvPointerReturning, &[Other, Other], None, ReturnKind::CharPtr),
    f("localeconv", "locale.h", EnvPointerReturning, &[], None, ReturnKind::LconvPtr),
    f("strerror", "string.h", EnvPointerReturning, &[Other], None, ReturnKind::CharPtr),
    f("strtol", "stdlib.h", ErrnoSetting, &[Other, Other, Other], None, ReturnKind::Long),
    f("strtoul", "stdlib.h", ErrnoSetting, &[Other, Other, Other], None, ReturnKind::ULong),
    f("strtod", "stdlib.h", ErrnoSetting, &[Other, Other], None, ReturnKind::Double),
    f("ftell", "stdio.h", ErrnoSetting, &[Other], None, ReturnKind::Long),
    f("fgetpos", "stdio.h", ErrnoSetting, &[Other, Other], None, ReturnKind::Int),
    f("fsetpos", "stdio.h", ErrnoSetting, &[Other, Other], None, ReturnKind::Int),
    f("malloc", "stdlib.h", MemAlloc, &[Size], None, ReturnKind::VoidPtr),
    f("calloc", "stdlib.h", MemAlloc, &[Size, Size], None, ReturnKind::VoidPtr),
    f("realloc", "stdlib.h", MemAlloc, &[Other, Size], None, ReturnKind::VoidPtr),
    f("free", "stdlib.h", MemAlloc, &[Other], None, ReturnKind::Void),
    f("signal", "signal.h", SignalApi, &[Other, Other], None, ReturnKind::VoidPtr),
    f("raise", "signal.h", SignalApi, &[Other], None, ReturnKind::Int),
    f("system", "stdlib.h", ProcessControl, &[Other], None, ReturnKind::Int),
    f("abort", "stdlib.h", ProcessControl, &[], None, ReturnKind::Void),
    f("exit", "stdlib.h", ProcessControl, &[Other], None, ReturnKind::Void),
];

pub fn lookup(name: &str) -> Option<&'static LibraryFunctionInfo> {
    LIBRARY.iter().find(|info| info.name == name)
}

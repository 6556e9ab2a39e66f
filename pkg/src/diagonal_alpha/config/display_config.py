"""
Display Configuration for the Command Line

This module contains the message templates and formatting parameters used by
the CLI and the reproduction script. Results always go to stdout in a fixed,
machine-readable form; everything defined here is for status lines on stderr.
"""

# Message formatting settings
MESSAGE_FORMATTING = {
    "use_emojis": True,
    "stage_width": 80,
    "sub_stage_width": 60,
    "max_members_inline": 64,  # longer sets are elided in status lines
}

# Emojis and icons
EMOJIS = {
    "start": "🚀",
    "stage": "📋",
    "ok": "✅",
    "error": "❌",
    "warning": "⚠️",
    "mismatch": "🔴",
    "summary": "📊",
}

# Error messages
ERROR_MESSAGES = {
    "usage": "Usage error: {error}",
    "syntax": "Could not parse polynomial {source!r}: {error}",
    "budget": "Oracle budget exceeded: {what} needs {requested}, bound is {bound} (set CONGRUENCE_ORACLE_BUDGET to raise it)",
    "unsupported": "Not available: {error}",
    "precondition": "Precondition not met: {error}",
    "mismatch": "Verification mismatch at n={n}: {first_method}={first} but {second_method}={second}",
    "lemma": "Structural check failed (implementation bug): {error}",
    "config": "Configuration error: {error}",
    "unexpected": "Unexpected error: {error}",
}

# Verification summaries
SUMMARY_MESSAGES = {
    "verify_ok": "All method pairs agree for n <= {max_n} ({checks} checks)",
    "verify_failed": "First counterexample: {detail}",
    "stage_ok": "Stage passed: {title}",
    "stage_failed": "Stage failed: {title} ({detail})",
}


def get_emoji(key):
    """Get an emoji by key (empty when emojis are disabled)."""
    if not MESSAGE_FORMATTING["use_emojis"]:
        return ""
    return EMOJIS.get(key, "")


def format_error_message(error_type, **kwargs):
    """Format an error message."""
    template = ERROR_MESSAGES.get(error_type, ERROR_MESSAGES["unexpected"])
    return f"{get_emoji('error')} {template.format(**kwargs)}".strip()


def format_summary(summary_type, **kwargs):
    """Format a summary line."""
    icon = get_emoji("ok") if summary_type.endswith("ok") else get_emoji("mismatch")
    return f"{icon} {SUMMARY_MESSAGES[summary_type].format(**kwargs)}".strip()


def format_members(members, limit=None):
    """Render ascending members as {a, b, c}, eliding long sets."""
    limit = MESSAGE_FORMATTING["max_members_inline"] if limit is None else limit
    members = list(members)
    if len(members) > limit:
        shown = ", ".join(str(m) for m in members[:limit])
        return "{" + shown + f", ... ({len(members)} total)" + "}"
    return "{" + ", ".join(str(m) for m in members) + "}"


def print_stage_title(title, stage_number=None, stream=None):
    """Print a stage title with visual separators"""
    width = MESSAGE_FORMATTING["stage_width"]
    prefix = f"{get_emoji('start')} STAGE {stage_number}: " if stage_number else f"{get_emoji('stage')} "
    print(f"\n{'=' * width}", file=stream)
    print(f"{prefix}{title}", file=stream)
    print(f"{'=' * width}", file=stream)


def print_sub_stage(title, stream=None):
    """Print a sub-stage title"""
    print(f"\n{get_emoji('stage')} {title}", file=stream)
    print(f"{'-' * MESSAGE_FORMATTING['sub_stage_width']}", file=stream)

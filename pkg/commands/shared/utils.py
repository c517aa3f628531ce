"""Responses and input helpers shared by every command handler."""

import json
import logging
from pathlib import Path

from errors import EXIT_INPUT_ERROR, InputError, SpecFileError, ToolkitError
from spec_model.architecture import parse_system_spec

logger = logging.getLogger(__name__)


def create_success_response(exit_code, data, text=None):
    """Create standardized success response"""
    return {
        'exitCode': exit_code,
        'body': data,
        'text': text if text is not None else json.dumps(data, indent=2, default=str),
    }


def create_error_response(exit_code, message, details=None):
    """Create standardized error response"""
    error_data = {'error': message}
    if details:
        error_data['details'] = list(details)
    lines = [f"error: {message}"] + [f"  {d}" for d in details or []]
    return {
        'exitCode': exit_code,
        'body': error_data,
        'text': "\n".join(lines),
    }


def error_response_for(e: Exception):
    if isinstance(e, ToolkitError):
        return create_error_response(e.exit_code, e.message, e.details)
    return create_error_response(EXIT_INPUT_ERROR, f"Internal error: {str(e)}")


def load_spec_file(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise SpecFileError(f"Spec file not found: {path}") from None
    except UnicodeDecodeError as e:
        raise SpecFileError(f"Spec file is not UTF-8: {path}") from e
    logger.info(f"Loaded spec file {path}")
    return parse_system_spec(text)


def require_process(spec, process):
    if process is None:
        return spec.arch.q
    if process not in spec.arch.processes:
        raise InputError(f"Unknown process {process}, expected one of {', '.join(spec.arch.processes)}")
    return process

"""Reading and writing of matrices and result files.

Matrices are exchanged as UTF-8 CSV files: the first row holds the column
names, the first column the sample ids. Floats are written with the
shortest decimal representation that round-trips, so a written matrix is
read back entry by entry identical.

All writes are atomic: the content goes to a temporary file in the target
directory which then replaces the target.
"""

import hashlib
import json
import os
from contextlib import contextmanager
import numpy as np
import pandas as pd


class InputFileError(ValueError):
    """An input file cannot be used.

    Args:
        message (str): Description of the problem.
        path (str): The offending file. Defaults to None.
        line (int): 1-based line of the file. Defaults to None.
        column (str): Name of the offending column. Defaults to None.

    """

    def __init__(self, message, path=None, line=None, column=None):
        location = list()
        if path is not None:
            location.append(str(path))
        if line is not None:
            location.append("line {}".format(line))
        if column is not None:
            location.append("column '{}'".format(column))
        prefix = ", ".join(location)
        super().__init__("{}: {}".format(prefix, message) if prefix else
                         message)
        self.path = path
        self.line = line
        self.column = column


def load_csv(path):
    """Load a non-negative matrix from a CSV file.

    Args:
        path (str): The path of the CSV file.

    Returns:
        tuple: The matrix (``numpy.ndarray``), the row ids and the column
        names (lists of strings).

    Raises:
        InputFileError: If the file cannot be parsed, is ragged or contains
            negative, non-numeric or non-finite values. The message names
            the line and column.

    """
    try:
        frame = pd.read_csv(path,
                            converters={0: str},
                            float_precision='round_trip',
                            encoding='utf-8')
    except (pd.errors.ParserError, pd.errors.EmptyDataError,
            UnicodeDecodeError) as error:
        raise InputFileError(str(error).strip(), path) from error

    # Sample ids stay text
    frame = frame.set_index(frame.columns[0])

    if frame.shape[0] == 0 or frame.shape[1] == 0:
        raise InputFileError("The file contains no matrix entries", path)

    # Header is line 1, data rows start at line 2
    for column in frame.columns:
        values = frame[column]
        if not pd.api.types.is_numeric_dtype(values):
            parsed = pd.to_numeric(values, errors='coerce')
            invalid = np.flatnonzero(parsed.isna() & values.notna())
            if invalid.size:
                row = int(invalid[0])
                raise InputFileError(
                    "'{}' is not a number".format(values.iloc[row]), path,
                    row + 2, column)
            frame[column] = parsed

    matrix = frame.to_numpy(dtype=np.float64)

    missing = np.argwhere(~np.isfinite(matrix))
    if missing.size:
        row, col = missing[0]
        raise InputFileError("Missing or non-finite value", path, row + 2,
                             frame.columns[col])

    negative = np.argwhere(matrix < 0)
    if negative.size:
        row, col = negative[0]
        raise InputFileError(
            "Negative value {!r}".format(float(matrix[row, col])), path,
            row + 2, frame.columns[col])

    row_ids = [str(label) for label in frame.index]
    col_names = [str(label) for label in frame.columns]
    return matrix, row_ids, col_names


@contextmanager
def atomic_target(path):
    """Yield a temporary path that replaces ``path`` on success."""
    temporary = "{}.tmp{}".format(path, os.getpid())
    try:
        yield temporary
        os.replace(temporary, path)
    finally:
        if os.path.exists(temporary):
            os.remove(temporary)


def save_frame(path, frame, index_label="id"):
    """Write a DataFrame as CSV (atomically, ``\\n`` line endings)."""
    with atomic_target(path) as temporary:
        frame.to_csv(temporary,
                     index_label=index_label,
                     lineterminator='\n',
                     encoding='utf-8')


def save_csv(path, matrix, row_ids, col_names, index_label="id"):
    """Write a matrix with its row ids and column names as CSV.

    Args:
        path (str): The target file.
        matrix (array-like): The matrix (n x p).
        row_ids (list): The n row ids.
        col_names (list): The p column names.
        index_label (str): Header of the id column. Defaults to "id".

    """
    frame = pd.DataFrame(np.asarray(matrix, dtype=np.float64),
                         index=list(row_ids),
                         columns=list(col_names))
    save_frame(path, frame, index_label)


def save_json(path, data):
    """Write a JSON document with sorted keys (atomically)."""
    with atomic_target(path) as temporary:
        with open(temporary, 'w', encoding='utf-8', newline='\n') as fds:
            json.dump(data, fds, sort_keys=True, indent=2)
            fds.write("\n")


def file_digest(path):
    """Return the SHA-256 hex digest of a file."""
    digest = hashlib.sha256()
    with open(path, 'rb') as fds:
        for chunk in iter(lambda: fds.read(1 << 16), b''):
            digest.update(chunk)
    return digest.hexdigest()

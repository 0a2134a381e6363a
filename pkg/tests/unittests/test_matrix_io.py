"""Unit tests for the CSV and JSON file handling."""

import json
import numpy as np
import pandas as pd
import pytest
from permnmf.matrix_io import (InputFileError, file_digest, load_csv,
                               save_csv, save_frame, save_json)


def write(path, text):
    """Write a text file and return its path as string."""
    path.write_text(text, encoding='utf-8')
    return str(path)


def test_load_csv(tmp_path):
    """Test a small matrix with header and id column."""
    path = write(tmp_path / "x.csv", "id,a,b\nr1,1.5,2\nr2,0,3e-2\n")

    matrix, row_ids, col_names = load_csv(path)

    assert np.array_equal(matrix, [[1.5, 2.0], [0.0, 0.03]])
    assert row_ids == ["r1", "r2"]
    assert col_names == ["a", "b"]


def test_load_csv_keeps_ids_as_text(tmp_path):
    """Test that numeric looking ids are not converted."""
    path = write(tmp_path / "x.csv", "id,a\n007,1\n010,2\n")
    _, row_ids, _ = load_csv(path)
    assert row_ids == ["007", "010"]


def test_load_csv_negative_value(tmp_path):
    """Test that negative entries are located."""
    path = write(tmp_path / "x.csv", "id,a,b\nr1,1,2\nr2,-1.0,3\n")

    with pytest.raises(InputFileError) as error:
        load_csv(path)

    assert error.value.line == 3
    assert error.value.column == "a"
    assert "line 3" in str(error.value)
    assert "column 'a'" in str(error.value)


def test_load_csv_not_a_number(tmp_path):
    """Test that text cells are located."""
    path = write(tmp_path / "x.csv", "id,a,b\nr1,1,2\nr2,3,abc\n")

    with pytest.raises(InputFileError, match="not a number") as error:
        load_csv(path)
    assert error.value.line == 3
    assert error.value.column == "b"


def test_load_csv_missing_and_non_finite(tmp_path):
    """Test that short rows and infinite values are rejected."""
    with pytest.raises(InputFileError, match="non-finite") as error:
        load_csv(write(tmp_path / "short.csv", "id,a,b\nr1,1\n"))
    assert error.value.line == 2

    with pytest.raises(InputFileError, match="non-finite"):
        load_csv(write(tmp_path / "inf.csv", "id,a\nr1,inf\n"))


def test_load_csv_ragged_and_empty(tmp_path):
    """Test that unparsable files are reported as input errors."""
    with pytest.raises(InputFileError):
        load_csv(write(tmp_path / "long.csv", "id,a\nr1,1\nr2,1,2,3\n"))
    with pytest.raises(InputFileError):
        load_csv(write(tmp_path / "empty.csv", ""))
    with pytest.raises(InputFileError, match="no matrix entries"):
        load_csv(write(tmp_path / "header.csv", "id,a,b\n"))

    # InputFileError is a ValueError
    assert issubclass(InputFileError, ValueError)


def test_save_csv_round_trip(tmp_path):
    """Test that written matrices are read back identically."""
    rng = np.random.default_rng(0)
    matrix = rng.random((5, 3)) * 10.0**rng.integers(-8, 8, size=(5, 3))
    path = str(tmp_path / "m.csv")

    save_csv(path, matrix, ["s{}".format(i) for i in range(5)],
             ["v0", "v1", "v2"])
    loaded, row_ids, col_names = load_csv(path)

    assert np.array_equal(loaded, matrix)
    assert row_ids[0] == "s0"
    assert col_names == ["v0", "v1", "v2"]
    assert [entry.name for entry in tmp_path.iterdir()] == ["m.csv"]


def test_save_csv_line_endings(tmp_path):
    """Test the header and the line terminator."""
    path = tmp_path / "m.csv"
    save_csv(str(path), [[1.0, 0.5]], ["s0"], ["a", "b"])

    assert path.read_bytes() == b"id,a,b\ns0,1.0,0.5\n"


def test_save_frame(tmp_path):
    """Test writing a DataFrame with a custom index label."""
    path = tmp_path / "f.csv"
    frame = pd.DataFrame({'label': [0, 1]}, index=["s0", "s1"])
    save_frame(str(path), frame)

    assert path.read_text() == "id,label\ns0,0\ns1,1\n"


def test_save_json(tmp_path):
    """Test that keys are sorted and the document is readable."""
    path = tmp_path / "r.json"
    save_json(str(path), {'b': 1, 'a': [1, 2]})

    text = path.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("\n")
    assert json.loads(text) == {'a': [1, 2], 'b': 1}


def test_file_digest(tmp_path):
    """Test that equal contents give equal digests."""
    first = write(tmp_path / "a.txt", "content")
    second = write(tmp_path / "b.txt", "content")
    third = write(tmp_path / "c.txt", "other")

    assert file_digest(first) == file_digest(second)
    assert file_digest(first) != file_digest(third)
    assert len(file_digest(first)) == 64

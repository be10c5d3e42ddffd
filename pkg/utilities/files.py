import json
import os

from typing import Iterable

import pandas as pd

from abstractions.utility import IUtility

from errors.bad_input_error import BadInputError
from errors.storage_error import StorageError

FLOAT_FORMAT = "%.10g"
# round-trip precision for exact covariances
EXACT_FLOAT_FORMAT = "%.17g"


class FileUtility(IUtility):
    """JSON and CSV persistence; every CSV goes through pandas with 10 significant digits."""

    def __init__(self, urn: str = None) -> None:
        super().__init__(urn)
        self.urn = urn

    def ensure_directory(self, path: str) -> str:
        try:
            os.makedirs(path, exist_ok=True)
        except OSError as err:
            raise StorageError(
                response_message=f"Cannot create directory {path}: {err}",
                response_key="error_create_directory",
                path=path
            )
        return path

    def write_json(self, payload, path: str) -> None:
        try:
            with open(path, "w") as file:
                json.dump(payload, file, indent=2, sort_keys=True)
                file.write("\n")
        except OSError as err:
            raise StorageError(response_message=f"Cannot write {path}: {err}", response_key="error_write_file", path=path)

    def read_json(self, path: str):
        try:
            with open(path, "r") as file:
                return json.load(file)
        except FileNotFoundError:
            raise BadInputError(response_message=f"File not found: {path}", response_key="error_file_not_found")
        except json.JSONDecodeError as err:
            raise BadInputError(response_message=f"Malformed JSON in {path}: {err}", response_key="error_malformed_json")

    def write_jsonl(self, records: Iterable[dict], path: str) -> None:
        try:
            with open(path, "w") as file:
                for record in records:
                    file.write(json.dumps(record, sort_keys=True) + "\n")
        except OSError as err:
            raise StorageError(response_message=f"Cannot write {path}: {err}", response_key="error_write_file", path=path)

    def write_csv(self, frame: pd.DataFrame, path: str, float_format: str = FLOAT_FORMAT) -> None:
        try:
            frame.to_csv(path, index=False, float_format=float_format, lineterminator="\n")
        except OSError as err:
            raise StorageError(response_message=f"Cannot write {path}: {err}", response_key="error_write_file", path=path)
        self.logger.debug(f"Wrote {len(frame)} rows to {path}")

    def read_csv(self, path: str, **kwargs) -> pd.DataFrame:
        try:
            return pd.read_csv(path, **kwargs)
        except FileNotFoundError:
            raise BadInputError(response_message=f"File not found: {path}", response_key="error_file_not_found")
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as err:
            raise BadInputError(response_message=f"Malformed CSV {path}: {err}", response_key="error_malformed_csv")

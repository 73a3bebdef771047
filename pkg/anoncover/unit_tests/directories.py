"""
Scratch locations of the unit tests: batch outputs and traces written by the cli tests.
"""
import os
import shutil

DIR_TEMP = os.path.join(os.path.dirname(__file__), "temp")


def fresh_run_dir(name: str) -> str:
    """Empty directory DIR_TEMP/name, cleared if an earlier session left files behind."""
    path = os.path.join(DIR_TEMP, name)
    if not os.path.abspath(path).startswith(os.path.abspath(DIR_TEMP) + os.sep):
        raise ValueError(f"run directory {name} lies outside of {DIR_TEMP}")
    if os.path.isdir(path):
        shutil.rmtree(path)
    os.makedirs(path)
    return path

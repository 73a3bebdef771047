from .directories import DIR_TEMP, fresh_run_dir

STAGE_REPORT_FILE = "stage_report.json"
SURVIVORS_FILE = "survivors.jsonl"
ELIMINATED_FILE = "eliminated.csv"
PRODUCT_FILE = "appendix_b.csv"
CONFIG_FILE = "config.toml"
LS_FILE = "ls_cases.csv"

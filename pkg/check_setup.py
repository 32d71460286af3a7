"""
Simple setup checker
Run: python check_setup.py
"""
import sys
import os

print("=" * 70)
print("ELLIPTIC ROTATIONS - QUICK SETUP CHECK")
print("=" * 70)
print()

# Check Python
print("1. Python Version:")
print(f"   Python {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}")
if sys.version_info >= (3, 9):
    print("   [OK] Python version is good")
else:
    print("   [FAIL] Need Python 3.9 or higher")
print()

# Check config files
print("2. Configuration Files:")
if os.path.exists(os.path.join('config', 'config.yaml')):
    print("   [OK] config/config.yaml exists")
else:
    print("   [WARN] config/config.yaml not found - built-in defaults will be used")
if os.path.exists('config.env'):
    print("   [OK] config.env exists")
else:
    print("   [INFO] config.env not found (optional)")
    print("   -> Copy config.env.example to config.env to override numerics or logging")
print()

# Check required packages
print("3. Python Packages:")
packages = {
    'numpy': 'numpy',
    'yaml': 'yaml',
    'dotenv': 'dotenv'
}
dev_packages = {
    'pytest': 'pytest',
    'hypothesis': 'hypothesis'
}

missing = []
for name, import_name in packages.items():
    try:
        __import__(import_name)
        print(f"   [OK] {name}")
    except ImportError:
        print(f"   [FAIL] {name} - not installed")
        missing.append(name)

missing_dev = []
for name, import_name in dev_packages.items():
    try:
        __import__(import_name)
        print(f"   [OK] {name} (tests)")
    except ImportError:
        print(f"   [WARN] {name} - not installed, needed only for the test suite")
        missing_dev.append(name)

if missing:
    print()
    print("   To install missing packages, run:")
    print("   pip install -r requirements.txt")
print()

# Check numerics
print("4. Numerical Backend:")
if 'numpy' not in missing:
    import numpy as np
    print(f"   numpy {np.__version__}")
    if np.finfo(np.float64).eps <= 2.3e-16:
        print("   [OK] binary64 arithmetic available")
    else:
        print("   [FAIL] float64 does not have IEEE double precision")
else:
    print("   [SKIP] numpy missing")
print()

# Summary
print("=" * 70)
if not missing:
    print("[OK] Basic setup looks good!")
    print()
    print("Next steps:")
    print("1. Run: python test_system.py (to check the worked examples)")
    print("2. Run: python main.py solve --a 2,2,1 --from 0,0,5 --to 2,2,3")
    if missing_dev:
        print("3. Install the test tools: pip install -r requirements-dev.txt")
else:
    print("[!] Some issues found - see above")
    print()
    print("Install missing packages:")
    print("  pip install -r requirements.txt")
print("=" * 70)

from setuptools import find_packages, setup

setup(
    name="lelong-lab",
    version="1.0.0",
    description="Números de Lelong y exponentes de singularidad de funciones psh estructuradas",
    package_dir={"": "src"},
    packages=find_packages(where="src"),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.26",
        "scipy>=1.11",
        "sympy>=1.12",
        "loguru==0.7.2",
        "python-dotenv==1.0.0",
        "pydantic>=2.5.3",
        "pydantic-settings>=2.1.0",
    ],
    extras_require={"dev": ["pytest>=7.4.3"]},
    entry_points={"console_scripts": ["lelong-lab=lelong_lab.cli:main"]},
)

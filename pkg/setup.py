import setuptools

setuptools.setup(
    name="qmmig",
    version="0.1.0",
    description=(
        "Quantile-maximising choice under risk and a migration panel analysis pipeline"
    ),
    license="Apache Software License 2.0",
    url="https://github.com/Ahmed-Khaled-Saleh/qmmig",
    packages=setuptools.find_packages(exclude=["test", "examples", "examples.*"]),
    python_requires=">=3.9",
    install_requires=["fastcore>=1.5", "numpy>=1.22", "scipy>=1.8", "pandas>=1.3"],
    extras_require={"dev": ["pytest"]},
    entry_points={"console_scripts": ["qmmig=qmmig.pipeline.cli:main"]},
)

from setuptools import find_packages, setup

setup(
    name='labourflow',
    version='0.1.0',
    description='Labour flow intention analytics from map queries and job postings',
    packages=find_packages('src'),
    package_dir={'': 'src'},
    scripts=['scripts/labour_flow.py'],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.16.5',
        'scipy>=1.7',
        'pandas>=1.5',
        'PyYAML>=5.1.2',
        'python-dateutil>=2.8.0',
        'psutil>=5.6',
        'scikit-learn>=1.0',
    ],
    extras_require={'test': ['pytest>=6']},
)
